from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

from algebra.exceptions import PolyParseError, SpecFileError
from algebra.polynomials import RingContext, TruncPoly, parse_poly, render_poly


@dataclass(frozen=True)
class AlgebraSpec:
    """Presentation A = D^r_k / <P_1, ..., P_l> as read from a spec file"""

    name: str
    context: RingContext
    generators: Tuple[TruncPoly, ...] = field(default_factory=tuple)

    def __post_init__(self):
        for generator in self.generators:
            if generator.context != self.context:
                raise ValueError(f"Generator {generator} does not belong to the spec context")
            if generator.is_zero():
                raise ValueError("Generators must be nonzero")

    @classmethod
    def from_text(cls, text: str, name: Optional[str] = None, source: Optional[str] = None) -> 'AlgebraSpec':
        """
        Parse the plain-text spec format

        :param text: file contents (`vars:`, `order:`, optional `rank:`/`name:`, `gen:` lines)
        :param name: fallback name when the file has no `name:` line
        :param source: file name used in diagnostics
        :return: AlgebraSpec instance
        """
        variables: Optional[List[str]] = None
        order: Optional[int] = None
        rank: Optional[List[str]] = None
        generator_lines: List[Tuple[int, str]] = []
        declared_name = None
        rank_line = None

        for line_no, raw in enumerate(text.splitlines(), 1):
            line = raw.split('#', 1)[0].strip()
            if not line:
                continue
            if ':' not in line:
                raise SpecFileError(f"Expected 'key: value', got {line!r}", source, line_no)
            key, value = (part.strip() for part in line.split(':', 1))
            if key == 'vars':
                if variables is not None:
                    raise SpecFileError("Duplicate 'vars' line", source, line_no)
                variables = value.split()
            elif key == 'order':
                if variables is None:
                    raise SpecFileError("'order' must follow 'vars'", source, line_no)
                try:
                    order = int(value)
                except ValueError:
                    raise SpecFileError(f"Order must be an integer, got {value!r}", source, line_no)
            elif key == 'rank':
                rank = value.split()
                rank_line = line_no
            elif key == 'name':
                declared_name = value
            elif key == 'gen':
                if variables is None or order is None:
                    raise SpecFileError("'gen' lines must follow 'vars' and 'order'", source, line_no)
                generator_lines.append((line_no, value))
            else:
                raise SpecFileError(f"Unknown key {key!r}", source, line_no)

        if variables is None:
            raise SpecFileError("Missing 'vars' line", source)
        if order is None:
            raise SpecFileError("Missing 'order' line", source)

        ranking = None
        if rank is not None:
            if sorted(rank) != sorted(variables):
                raise SpecFileError("'rank' must list every variable exactly once", source, rank_line)
            ranking = tuple(variables.index(v) for v in rank)

        try:
            context = RingContext(tuple(variables), order, ranking)
        except ValueError as e:
            raise SpecFileError(str(e), source)

        generators = []
        for line_no, poly_text in generator_lines:
            try:
                poly = parse_poly(poly_text, context)
            except PolyParseError as e:
                raise SpecFileError(str(e), source, line_no)
            if poly.is_zero():
                raise SpecFileError("Generator is zero", source, line_no)
            generators.append(poly)

        return cls(name=declared_name or name or 'algebra', context=context, generators=tuple(generators))

    def to_text(self) -> str:
        """Serialize back into the spec file format"""
        lines = [f"name: {self.name}",
                 f"vars: {' '.join(self.context.variables)}",
                 f"order: {self.context.r}"]
        if self.context.ranking is not None:
            lines.append(f"rank: {' '.join(self.context.variables[i] for i in self.context.ranking)}")
        lines.extend(f"gen: {render_poly(g)}" for g in self.generators)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> Dict[str, Any]:
        result = {'name': self.name}
        result.update(self.context.to_dict())
        result['generators'] = [render_poly(g) for g in self.generators]
        return result

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'AlgebraSpec':
        context = RingContext.from_dict(data)
        generators = tuple(parse_poly(text, context) for text in data.get('generators', []))
        return cls(name=data.get('name', 'algebra'), context=context, generators=generators)
