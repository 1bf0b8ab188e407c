import datetime
import json
import logging
import os
from collections import Counter

import markdown
from jinja2 import Environment, FileSystemLoader
from pydantic import BaseModel

from constants import ANALYSIS_TEMPLATE, BOUNDS_TEMPLATE, HTML_TEMPLATE, TEMPLATE_DIR, VERSION
from idcodes.models import BoundsRecord, LayerAnalysis, LemmaReport, RatioReport

logger = logging.getLogger(__name__)


def _flatten(prefix, value, out):
    if isinstance(value, dict):
        for key, item in value.items():
            _flatten(f"{prefix}.{key}" if prefix else str(key), item, out)
    elif isinstance(value, (list, tuple)):
        out[prefix] = json.dumps(value)
    elif value is None:
        out[prefix] = ""
    else:
        out[prefix] = str(value).lower() if isinstance(value, bool) else str(value)


def to_key_value(model) -> str:
    """One sorted ``key=value`` line per leaf; lists are written as JSON."""
    data = model.model_dump(mode="json") if isinstance(model, BaseModel) else model
    out = {}
    _flatten("", data, out)
    return "".join(f"{key}={out[key]}\n" for key in sorted(out))


class ReportGenerator:
    def __init__(self, template_dir=TEMPLATE_DIR):
        self.env = Environment(loader=FileSystemLoader(template_dir))

    @staticmethod
    def _now():
        return datetime.datetime.now().strftime("%Y-%m-%d %H:%M:%S")

    def render_analysis(self, label: str, analysis: LayerAnalysis, lemmas: LemmaReport = None) -> str:
        roles = Counter(role.role for role in analysis.roles)
        template = self.env.get_template(ANALYSIS_TEMPLATE)
        return template.render(
            label=label,
            version=VERSION,
            generated_at=self._now(),
            analysis=analysis,
            code_size=len(analysis.roles),
            role_counts={name: roles.get(name, 0) for name in ("corner", "fellow", "plain")},
            lemmas=lemmas,
        )

    def render_bounds(self, record: BoundsRecord, ratio: RatioReport = None) -> str:
        rows = [(name, value) for name, value in record.model_dump().items() if name not in ("q", "n") and value is not None]
        template = self.env.get_template(BOUNDS_TEMPLATE)
        return template.render(record=record, rows=rows, ratio=ratio)

    def generate_html(self, title: str, markdown_text: str, output_path: str):
        body = markdown.markdown(markdown_text, extensions=["tables"])
        html_content = self.env.get_template(HTML_TEMPLATE).render(
            title=title, body=body, version=VERSION, generated_at=self._now()
        )
        directory = os.path.dirname(output_path)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(output_path, "w") as f:
            f.write(html_content)
        logger.info(f"Report generated at {output_path}")
