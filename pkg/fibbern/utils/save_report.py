"""
Utility function for saving rendered reports to files.
"""
import os
import logging


def save_report(content: str, output_path: str) -> str:
    """
    Save rendered report content to a file.

    Args:
        content: Rendered report (text, JSON or CSV)
        output_path: Destination file; parent directories are created

    Returns:
        Path to the saved file

    Raises:
        IOError: If the file cannot be written
    """
    output_dir = os.path.dirname(output_path)
    if output_dir:
        os.makedirs(output_dir, exist_ok=True)

    try:
        with open(output_path, 'w', encoding='utf-8', newline='') as f:
            f.write(content)

        file_size = os.path.getsize(output_path)
        logging.info(f"Report saved to: {output_path} ({file_size} bytes)")
        return output_path

    except Exception as e:
        raise IOError(f"Error saving report to {output_path}: {e}")
