import json
import os
from datetime import datetime, timezone

from filelock import FileLock
from jinja2 import Environment, FileSystemLoader, select_autoescape
from loguru import logger

from src.constants import STATUS_ERROR, STATUS_OK, STATUS_WARNING

REPORT_TEMPLATE = """<!DOCTYPE html>
<html lang="en">
<head>
    <meta charset="UTF-8">
    <meta name="viewport" content="width=device-width, initial-scale=1.0">
    <title>CycleMate Scan Report</title>
    <style>
        :root {
            --primary-bg: #f8f9fa; --card-bg: #ffffff; --text-main: #1f2937;
            --text-secondary: #6b7280; --border-color: #e5e7eb;
            --success-bg: #ecfdf5; --success-text: #047857;
            --warning-bg: #fffbeb; --warning-text: #b45309;
            --danger-bg: #fef2f2; --danger-text: #b91c1c;
        }
        body { font-family: sans-serif; background: var(--primary-bg); color: var(--text-main);
               font-size: 0.875rem; margin: 0; padding: 0 2rem 40px; }
        header { display: flex; justify-content: space-between; padding: 1rem 0;
                 border-bottom: 1px solid var(--border-color); margin-bottom: 2rem; }
        .brand { font-weight: 700; }
        .kpi-grid { display: grid; grid-template-columns: repeat(auto-fit, minmax(200px, 1fr));
                    gap: 1.5rem; margin-bottom: 2rem; }
        .kpi-card { background: var(--card-bg); padding: 1.25rem; border: 1px solid var(--border-color);
                    border-radius: 8px; }
        .kpi-label { color: var(--text-secondary); font-size: 0.75rem; text-transform: uppercase; }
        .kpi-value { font-size: 2rem; font-weight: 700; }
        table { width: 100%; border-collapse: collapse; background: var(--card-bg); margin-bottom: 2rem; }
        th, td { text-align: left; padding: 0.5rem 0.75rem; border-bottom: 1px solid var(--border-color); }
        th { color: var(--text-secondary); background: #f9fafb; }
        .mono { font-family: monospace; }
        .badge { padding: 0.2em 0.6em; font-size: 0.75em; font-weight: 600; border-radius: 4px;
                 text-transform: uppercase; }
        .badge-ok { background: var(--success-bg); color: var(--success-text); }
        .badge-warning { background: var(--warning-bg); color: var(--warning-text); }
        .badge-error { background: var(--danger-bg); color: var(--danger-text); }
    </style>
</head>
<body>
    <header>
        <div class="brand">CycleMate</div>
        <div>Report Generated: {{ timestamp }}</div>
    </header>

    <div class="kpi-grid">
        <div class="kpi-card"><div class="kpi-label">Complexes</div><div class="kpi-value">{{ complexes|length }}</div></div>
        <div class="kpi-card"><div class="kpi-label">Passed</div><div class="kpi-value">{{ stats.ok }}</div></div>
        <div class="kpi-card"><div class="kpi-label">Warnings</div><div class="kpi-value" style="color: var(--warning-text);">{{ stats.warning }}</div></div>
        <div class="kpi-card"><div class="kpi-label">Errors</div><div class="kpi-value" style="color: var(--danger-text);">{{ stats.error }}</div></div>
    </div>

    <h2>Classification</h2>
    <table>
        <thead>
            <tr><th>Complex</th><th>Dims</th><th>Cycle</th><th>Pseudo-manifold</th>
                <th>Face-minimal</th><th>Orientable</th>{% for f in fields %}<th>&beta; {{ f }}</th>{% endfor %}</tr>
        </thead>
        <tbody>
            {% for row in complexes %}
            <tr>
                <td class="mono">{{ row.name }}</td>
                <td>{{ row.dims | join(', ') }}</td>
                <td>{{ 'yes' if row.cycle else 'no' }}</td>
                <td>{{ 'yes' if row.pseudo_manifold else 'no' }}</td>
                <td>{{ '-' if row.face_minimal is none else ('yes' if row.face_minimal else 'no') }}</td>
                <td>{{ '-' if row.orientable is none else ('yes' if row.orientable else 'no') }}</td>
                {% for f in fields %}<td class="mono">{{ row.betti.get(f, {}).values() | join(' ') }}</td>{% endfor %}
            </tr>
            {% endfor %}
        </tbody>
    </table>

    <h2>Analyzer results</h2>
    <table>
        <thead><tr><th>Complex</th><th>Analyzer</th><th>Status</th><th>Message</th></tr></thead>
        <tbody>
            {% for result in results %}
            <tr>
                <td class="mono">{{ result.complex }}</td>
                <td class="mono">{{ result.analyzer }}</td>
                <td><span class="badge badge-{{ result.status }}">{{ result.status|upper }}</span></td>
                <td>{{ result.message }}</td>
            </tr>
            {% endfor %}
        </tbody>
    </table>
</body>
</html>
"""


class HTMLGenerator:
    def __init__(self, template_dir: str = "src/templates", output_dir: str = "reports"):
        self.output_dir = output_dir
        os.makedirs(output_dir, exist_ok=True)
        os.makedirs(template_dir, exist_ok=True)
        self.env = Environment(
            loader=FileSystemLoader(template_dir),
            autoescape=select_autoescape(['html', 'xml'])
        )
        self._lock = FileLock(os.path.join(output_dir, ".report.lock"))
        self._create_default_template(os.path.join(template_dir, "report.html"))

    def _create_default_template(self, path: str):
        with open(path, "w") as f:
            f.write(REPORT_TEMPLATE)

    @staticmethod
    def _summarize(results: list) -> tuple[dict, list, list]:
        stats = {STATUS_OK: 0, STATUS_WARNING: 0, STATUS_ERROR: 0}
        rows: dict[str, dict] = {}
        fields: list[str] = []
        for r in results:
            status = r.get("status", STATUS_ERROR)
            stats[status if status in stats else STATUS_ERROR] += 1
            row = rows.setdefault(r.get("complex", "unknown"), {
                "name": r.get("complex", "unknown"), "dims": [], "cycle": False,
                "pseudo_manifold": False, "face_minimal": None, "orientable": None, "betti": {},
            })
            if "classification" in r:
                row.update({k: r["classification"][k] for k in
                            ("dims", "cycle", "pseudo_manifold", "face_minimal", "orientable")})
            if "betti" in r:
                row["betti"] = r["betti"]
                fields.extend(f for f in r["betti"] if f not in fields)
        return stats, list(rows.values()), fields

    def generate(self, results: list) -> str:
        """Render index.html and report.json into the output directory; returns the HTML path."""
        template = self.env.get_template("report.html")
        stats, complexes, fields = self._summarize(results)
        html_content = template.render(
            results=results,
            complexes=complexes,
            fields=fields,
            stats=stats,
            timestamp=datetime.now(timezone.utc).strftime("%Y-%m-%d %H:%M:%S UTC"),
        )

        output_file = os.path.join(self.output_dir, "index.html")
        json_file = os.path.join(self.output_dir, "report.json")
        with self._lock:
            with open(output_file, "w") as f:
                f.write(html_content)
            with open(json_file, "w") as f:
                json.dump(results, f, indent=2, sort_keys=True, default=str)
        logger.debug(f"Wrote {len(results)} result(s) to {self.output_dir}")
        return output_file
