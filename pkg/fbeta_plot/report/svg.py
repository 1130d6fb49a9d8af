"""
SVG 渲染

左侧: 对数 beta 轴上的 F_beta 曲线(胜出者着色，其余浅灰)，交叉验证模式下为胜出者画 均值±1标准差 带，
底部黑线标记显著性段；右侧: TPR-PPV 散点图。
输出完全由输入决定: 颜色按首次胜出顺序分配，浮点数保留6位小数，不含时间戳。
"""

import math
from dataclasses import dataclass, fields
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

from jinja2 import Environment, StrictUndefined

from fbeta_plot.core.errors import EmptyDocument, InvalidConfig
from fbeta_plot.report.document import MODE_CV, ReportDocument

DEFAULT_PALETTE = (
    '#1f77b4', '#ff7f0e', '#2ca02c', '#d62728', '#9467bd',
    '#8c564b', '#e377c2', '#17becf', '#bcbd22', '#7f7f7f',
)

# 面板内边距: 左, 右, 上, 下
CURVE_MARGIN = (70.0, 20.0, 50.0, 60.0)
SCATTER_MARGIN = (60.0, 30.0, 50.0, 60.0)
SIGNIFICANCE_OFFSET = 6.0

SVG_TEMPLATE = """\
<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{{ width }}" height="{{ height }}" viewBox="0 0 {{ width }} {{ height }}" font-family="sans-serif" font-size="12">
<rect class="background" x="0" y="0" width="{{ width }}" height="{{ height }}" fill="white"/>
<text class="title" x="{{ title_x }}" y="24" text-anchor="middle" font-size="16">{{ title }}</text>
<g class="curve-panel">
<rect class="frame" x="{{ curve.left }}" y="{{ curve.top }}" width="{{ curve.width }}" height="{{ curve.height }}" fill="none" stroke="black"/>
{% for tick in x_ticks %}
<line class="tick" x1="{{ tick.x }}" y1="{{ curve.bottom }}" x2="{{ tick.x }}" y2="{{ tick.y2 }}" stroke="black"/>
<text class="tick-label" x="{{ tick.x }}" y="{{ tick.label_y }}" text-anchor="middle">{{ tick.label }}</text>
{% endfor %}
{% for tick in y_ticks %}
<line class="tick" x1="{{ tick.x2 }}" y1="{{ tick.y }}" x2="{{ curve.left }}" y2="{{ tick.y }}" stroke="black"/>
<text class="tick-label" x="{{ tick.label_x }}" y="{{ tick.y }}" text-anchor="end" dominant-baseline="middle">{{ tick.label }}</text>
{% endfor %}
<text class="axis-label" x="{{ curve.center_x }}" y="{{ curve.axis_label_y }}" text-anchor="middle">β</text>
<text class="axis-label" x="{{ curve.axis_label_x }}" y="{{ curve.center_y }}" text-anchor="middle" transform="rotate(-90 {{ curve.axis_label_x }} {{ curve.center_y }})">Fβ</text>
{% for band in bands %}
<path class="band" data-classifier="{{ band.name }}" d="{{ band.d }}" fill="{{ band.color }}" fill-opacity="{{ band_opacity }}" stroke="none"/>
{% endfor %}
{% for line in boundaries %}
<line class="boundary" x1="{{ line.x }}" y1="{{ curve.top }}" x2="{{ line.x }}" y2="{{ curve.bottom }}" stroke="#888888" stroke-dasharray="4,3"/>
{% endfor %}
{% for poly in polylines %}
<polyline class="curve" data-classifier="{{ poly.name }}" data-winner="{{ poly.winner }}" points="{{ poly.points }}" fill="none" stroke="{{ poly.color }}" stroke-width="{{ poly.stroke_width }}"/>
{% endfor %}
{% for run in runs %}
<line class="significance" x1="{{ run.x1 }}" y1="{{ run.y }}" x2="{{ run.x2 }}" y2="{{ run.y }}" stroke="black" stroke-width="3"/>
{% endfor %}
<g class="legend">
{% for entry in legend %}
<rect class="legend-swatch" x="{{ entry.swatch_x }}" y="{{ entry.swatch_y }}" width="10" height="10" fill="{{ entry.color }}"/>
<text class="legend-entry" data-classifier="{{ entry.name }}" x="{{ entry.text_x }}" y="{{ entry.text_y }}">{{ entry.label }}</text>
{% endfor %}
</g>
</g>
<g class="scatter-panel">
<rect class="frame" x="{{ scatter.left }}" y="{{ scatter.top }}" width="{{ scatter.width }}" height="{{ scatter.height }}" fill="none" stroke="black"/>
{% for tick in scatter_x_ticks %}
<line class="tick" x1="{{ tick.x }}" y1="{{ scatter.bottom }}" x2="{{ tick.x }}" y2="{{ tick.y2 }}" stroke="black"/>
<text class="tick-label" x="{{ tick.x }}" y="{{ tick.label_y }}" text-anchor="middle">{{ tick.label }}</text>
{% endfor %}
{% for tick in scatter_y_ticks %}
<line class="tick" x1="{{ tick.x2 }}" y1="{{ tick.y }}" x2="{{ scatter.left }}" y2="{{ tick.y }}" stroke="black"/>
<text class="tick-label" x="{{ tick.label_x }}" y="{{ tick.y }}" text-anchor="end" dominant-baseline="middle">{{ tick.label }}</text>
{% endfor %}
<text class="axis-label" x="{{ scatter.center_x }}" y="{{ scatter.axis_label_y }}" text-anchor="middle">TPR</text>
<text class="axis-label" x="{{ scatter.axis_label_x }}" y="{{ scatter.center_y }}" text-anchor="middle" transform="rotate(-90 {{ scatter.axis_label_x }} {{ scatter.center_y }})">PPV</text>
{% for marker in markers %}
<circle class="marker" data-classifier="{{ marker.name }}" data-winner="{{ marker.winner }}" cx="{{ marker.cx }}" cy="{{ marker.cy }}" r="4" fill="{{ marker.color }}"/>
{% endfor %}
</g>
</svg>
"""

_environment = Environment(autoescape=True, trim_blocks=True, lstrip_blocks=True,
                           undefined=StrictUndefined, keep_trailing_newline=True)
_template = _environment.from_string(SVG_TEMPLATE)


@dataclass(frozen=True)
class RenderOptions:
    """渲染参数"""

    width: float = 1200.0
    height: float = 500.0
    curve_panel_width: float = 800.0
    palette: Tuple[str, ...] = DEFAULT_PALETTE
    gray: str = '#d3d3d3'
    band_opacity: float = 0.2
    title: Optional[str] = None

    @classmethod
    def from_mapping(cls, values: Mapping[str, Any]) -> 'RenderOptions':
        """由配置文件的 render 节构造; 不认识的键报错"""
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(values) - known)
        if unknown:
            raise InvalidConfig(f"render 配置中不认识的键: {', '.join(unknown)}")
        values = dict(values)
        if 'palette' in values:
            values['palette'] = tuple(values['palette'])
            if not values['palette']:
                raise InvalidConfig("render.palette 不能为空")
        return cls(**values)


def fmt(value: float) -> str:
    """6位小数; 消除 -0.000000"""
    text = f"{value:.6f}"
    return '0.000000' if text == '-0.000000' else text


def format_beta(beta: float) -> str:
    return f"{beta:.4g}"


@dataclass(frozen=True)
class _Panel:
    left: float
    right: float
    top: float
    bottom: float

    @property
    def width(self) -> float:
        return self.right - self.left

    @property
    def height(self) -> float:
        return self.bottom - self.top

    def context(self) -> Dict[str, str]:
        return {
            'left': fmt(self.left), 'right': fmt(self.right),
            'top': fmt(self.top), 'bottom': fmt(self.bottom),
            'width': fmt(self.width), 'height': fmt(self.height),
            'center_x': fmt((self.left + self.right) / 2),
            'center_y': fmt((self.top + self.bottom) / 2),
            'axis_label_y': fmt(self.bottom + 40),
            'axis_label_x': fmt(self.left - 45),
        }


class _CurveAxes:
    """曲线面板坐标: x 对 log10(beta) 仿射, y 对 F_beta 仿射"""

    def __init__(self, panel: _Panel, beta_min: float, beta_max: float):
        self.panel = panel
        self.log_min = math.log10(beta_min)
        self.log_span = math.log10(beta_max) - self.log_min

    def x(self, beta: float) -> float:
        return self.panel.left + (math.log10(beta) - self.log_min) / self.log_span * self.panel.width

    def y(self, value: float) -> float:
        value = min(max(value, 0.0), 1.0)
        return self.panel.bottom - value * self.panel.height


def _unit_y(panel: _Panel, value: float) -> float:
    return panel.bottom - value * panel.height


def _unit_x(panel: _Panel, value: float) -> float:
    return panel.left + value * panel.width


def _unit_ticks(panel: _Panel) -> Tuple[List[Dict[str, str]], List[Dict[str, str]]]:
    x_ticks, y_ticks = [], []
    for step in range(6):
        value = step / 5
        x_ticks.append({'x': fmt(_unit_x(panel, value)), 'y2': fmt(panel.bottom + 5),
                        'label_y': fmt(panel.bottom + 18), 'label': f"{value:.1f}"})
        y_ticks.append({'y': fmt(_unit_y(panel, value)), 'x2': fmt(panel.left - 5),
                        'label_x': fmt(panel.left - 8), 'label': f"{value:.1f}"})
    return x_ticks, y_ticks


def _winner_ranges(doc: ReportDocument) -> Dict[str, List[Tuple[float, float]]]:
    ranges: Dict[str, List[Tuple[float, float]]] = {}
    for seg in doc.segments:
        ranges.setdefault(seg.winner, []).append((seg.beta_lo, seg.beta_hi))
    return ranges


def _polyline_points(axes: _CurveAxes, betas: Sequence[float], values: Sequence[float]) -> str:
    return ' '.join(f"{fmt(axes.x(b))},{fmt(axes.y(v))}" for b, v in zip(betas, values))


def _band_path(axes: _CurveAxes, betas: Sequence[float], mean: Sequence[float], std: Sequence[float]) -> str:
    upper = [(axes.x(b), axes.y(m + s)) for b, m, s in zip(betas, mean, std)]
    lower = [(axes.x(b), axes.y(m - s)) for b, m, s in zip(betas, mean, std)]
    outline = upper + lower[::-1]
    head = f"M {fmt(outline[0][0])},{fmt(outline[0][1])}"
    rest = ' '.join(f"L {fmt(x)},{fmt(y)}" for x, y in outline[1:])
    return f"{head} {rest} Z"


def render_svg(doc: ReportDocument, opts: Optional[RenderOptions] = None) -> str:
    """
    把报告文档渲染为 SVG 文本

    Args:
        doc: 报告文档
        opts: 渲染参数，默认 RenderOptions()

    Returns:
        SVG 1.1 文本; 相同输入得到逐字节相同的输出

    Raises:
        EmptyDocument: 文档中没有曲线
    """
    if not doc.curves:
        raise EmptyDocument("报告文档中没有曲线, 无法渲染")
    opts = opts or RenderOptions()

    left, right, top, bottom = CURVE_MARGIN
    curve_panel = _Panel(left, opts.curve_panel_width - right, top, opts.height - bottom)
    axes = _CurveAxes(curve_panel, doc.grid.beta_min, doc.grid.beta_max)

    s_left, s_right, s_top, s_bottom = SCATTER_MARGIN
    scatter_panel = _Panel(opts.curve_panel_width + s_left, opts.width - s_right, s_top, opts.height - s_bottom)

    winners = doc.winners
    colors = {name: opts.palette[i % len(opts.palette)] for i, name in enumerate(winners)}
    betas = doc.grid.points

    # 对数轴的整十刻度
    x_ticks = []
    for k in range(math.ceil(math.log10(doc.grid.beta_min) - 1e-12),
                   math.floor(math.log10(doc.grid.beta_max) + 1e-12) + 1):
        beta = 10.0 ** k
        x_ticks.append({'x': fmt(axes.x(beta)), 'y2': fmt(curve_panel.bottom + 5),
                        'label_y': fmt(curve_panel.bottom + 18), 'label': f"{beta:g}"})
    y_ticks = [{'y': fmt(axes.y(step / 5)), 'x2': fmt(curve_panel.left - 5),
                'label_x': fmt(curve_panel.left - 8), 'label': f"{step / 5:.1f}"} for step in range(6)]

    curves = {curve.name: curve for curve in doc.curves}
    ordered = [c for c in doc.curves if c.name not in colors] + [curves[name] for name in winners]
    polylines = [{
        'name': curve.name,
        'winner': 'true' if curve.name in colors else 'false',
        'color': colors.get(curve.name, opts.gray),
        'stroke_width': '2' if curve.name in colors else '1',
        'points': _polyline_points(axes, betas, curve.mean),
    } for curve in ordered]

    bands = []
    if doc.mode == MODE_CV:
        bands = [{'name': name, 'color': colors[name],
                  'd': _band_path(axes, betas, curves[name].mean, curves[name].std)} for name in winners]

    boundaries = [{'x': fmt(axes.x(seg.beta_hi))} for seg in doc.segments[:-1]]
    sig_y = fmt(curve_panel.bottom - SIGNIFICANCE_OFFSET)
    runs = [{'x1': fmt(axes.x(lo)), 'x2': fmt(axes.x(hi)), 'y': sig_y} for lo, hi in doc.significance_runs]

    ranges = _winner_ranges(doc)
    legend = []
    for i, name in enumerate(winners):
        label = ', '.join(f"[{format_beta(lo)}, {format_beta(hi)}]" for lo, hi in ranges[name])
        legend.append({
            'name': name, 'color': colors[name], 'label': f"{name}: β ∈ {label}",
            'swatch_x': fmt(curve_panel.left + 10), 'swatch_y': fmt(curve_panel.top + 8 + 16 * i),
            'text_x': fmt(curve_panel.left + 26), 'text_y': fmt(curve_panel.top + 17 + 16 * i),
        })

    markers = []
    marker_order = [name for name, _ in doc.points if name not in colors] + [n for n in winners if doc.points_of(n)]
    for name in marker_order:
        for p in doc.points_of(name):
            markers.append({
                'name': name,
                'winner': 'true' if name in colors else 'false',
                'color': colors.get(name, opts.gray),
                'cx': fmt(_unit_x(scatter_panel, p.tpr)),
                'cy': fmt(_unit_y(scatter_panel, p.ppv)),
            })
    scatter_x_ticks, scatter_y_ticks = _unit_ticks(scatter_panel)

    mode_label = '交叉验证' if doc.mode == MODE_CV else 'hold-out'
    return _template.render(
        width=fmt(opts.width),
        height=fmt(opts.height),
        title=opts.title if opts.title is not None else f"Fβ-plot ({mode_label})",
        title_x=fmt(opts.width / 2),
        curve=curve_panel.context(),
        scatter=scatter_panel.context(),
        x_ticks=x_ticks,
        y_ticks=y_ticks,
        bands=bands,
        band_opacity=f"{opts.band_opacity:g}",
        boundaries=boundaries,
        polylines=polylines,
        runs=runs,
        legend=legend,
        markers=markers,
        scatter_x_ticks=scatter_x_ticks,
        scatter_y_ticks=scatter_y_ticks,
    )
