from runners.scan_runner import ScanRunner, generate_instances, rebuild_record, scan_run

__all__ = [
    'ScanRunner',
    'generate_instances',
    'rebuild_record',
    'scan_run'
]
