from __future__ import annotations

import base64
import io
from typing import Any, Dict, List, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import pandas as pd  # noqa: E402
from jinja2 import Template  # noqa: E402

_HTML = Template("""<!doctype html>
<html>
<head>
<meta charset="utf-8">
<title>{{ s.scenario }} run: {{ s.n1 }}x{{ s.n2 }}</title>
<style>
body { font-family: Arial, sans-serif; margin: 18px; color: #111; }
h1 { margin: 0 0 6px 0; }
.small { color: #444; font-size: 12px; }
.card { border: 1px solid #ddd; border-radius: 10px; padding: 14px; margin: 12px 0; }
table { border-collapse: collapse; }
th, td { border-bottom: 1px solid #eee; padding: 6px 10px; text-align: left; font-size: 13px; }
th { background: #fafafa; }
img { max-width: 100%; }
</style>
</head>
<body>
<h1>{{ s.scenario }}</h1>
<div class="small">Grid {{ s.n1 }}x{{ s.n2 }} | l = ({{ "%.6g"|format(s.l1) }}, {{ "%.6g"|format(s.l2) }}) | dt = {{ s.dt }} | nu = {{ s.nu }} | n_p = {{ s.n_p }} | n_r = {{ s.n_r }} | status: {{ s.status }}</div>

<div class="card">
  <h2>Run summary</h2>
  <table>
    {% for k, v in rows %}
    <tr><th>{{ k }}</th><td>{{ v }}</td></tr>
    {% endfor %}
  </table>
</div>

{% if s.final %}
<div class="card">
  <h2>Final diagnostics</h2>
  <table>
    {% for k, v in s.final.items() %}
    <tr><th>{{ k }}</th><td>{{ "%.6g"|format(v) }}</td></tr>
    {% endfor %}
  </table>
</div>
{% endif %}

{% for title, png in plots %}
<div class="card">
  <h2>{{ title }}</h2>
  <img src="data:image/png;base64,{{ png }}" alt="{{ title }}">
</div>
{% endfor %}
</body>
</html>
""")

_PLOTS: List[Tuple[str, Tuple[str, ...], bool]] = [
    ("Energy and enstrophy", ("E", "Z"), False),
    ("CFL number", ("CFL",), False),
    ("Residuals", ("max_div", "bc_residual", "steady_residual"), True),
]


def _png(df: pd.DataFrame, cols: Tuple[str, ...], logy: bool) -> str:
    fig, axes = plt.subplots(1, len(cols), figsize=(4.2 * len(cols), 3.2), squeeze=False)
    for ax, col in zip(axes[0], cols):
        y = df[col].abs() if logy else df[col]
        ax.plot(df["time"], y, lw=1.2)
        if logy and (y > 0).any():
            ax.set_yscale("log")
        ax.set_xlabel("t")
        ax.set_title(col)
        ax.grid(alpha=0.3)
    fig.tight_layout()
    buf = io.BytesIO()
    fig.savefig(buf, format="png", dpi=90)
    plt.close(fig)
    return base64.b64encode(buf.getvalue()).decode("ascii")


def render_run_report(summary: Dict[str, Any], diagnostics: pd.DataFrame) -> str:
    keys = (
        "steps_completed",
        "start_time",
        "end_time",
        "wall_time_total",
        "wall_time_per_step",
        "transforms_per_step",
        "transforms_per_substep",
        "scenario_info",
        "overhead",
    )
    rows = [(k, summary[k]) for k in keys if k in summary]
    plots = []
    if len(diagnostics) > 1:
        plots = [(title, _png(diagnostics, cols, logy)) for title, cols, logy in _PLOTS]
    return _HTML.render(s=summary, rows=rows, plots=plots)
