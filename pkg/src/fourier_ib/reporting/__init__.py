from fourier_ib.reporting.html_report import render_run_report

__all__ = ["render_run_report"]
