"""
Report emission: JSON, CSV, text and PGM heatmaps
"""

import json
import logging
from enum import Enum
from numbers import Integral, Real
from pathlib import Path

import numpy as np
import pandas as pd

from config import Config

logger = logging.getLogger(__name__)


def _round(value):
    """Fixed significant digits so repeated runs print identical bytes"""
    return float(f'{value:.{Config.FLOAT_DIGITS}g}')


def to_jsonable(obj):
    """Convert numpy scalars, tuples and enums into plain JSON types"""
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, Integral):
        return int(obj)
    if isinstance(obj, Real):
        return _round(float(obj))
    if isinstance(obj, Path):
        return str(obj)
    return obj


def _rows(document):
    return document.get('reports') or document.get('pairs') or []


def render_json(document):
    """Indented JSON, one trailing newline"""
    return json.dumps(to_jsonable(document), indent=2) + '\n'


def render_csv(document):
    """One row per report (or per pair), nested keys flattened with dots"""
    rows = to_jsonable(_rows(document))
    if not rows:
        return ''
    frame = pd.json_normalize(rows)
    return frame.to_csv(index=False, float_format=f'%.{Config.FLOAT_DIGITS}g', lineterminator='\n')


def render_text(document):
    """Human-readable summary"""
    doc = to_jsonable(document)
    lines = [f"{doc.get('command', 'zakspace')}  M={doc.get('m')}  success={doc.get('success')}"]
    if doc.get('error'):
        lines.append(f"error: {doc['error']}")
    for key, value in doc.items():
        if key in ('command', 'm', 'success', 'error', 'pairs', 'reports'):
            continue
        lines.append(f"{key}: {value}")
    pairs = doc.get('pairs') or []
    if pairs:
        lines.append(f"pairs ({len(pairs)}):")
        for pair in pairs:
            lines.append(f"  ({pair['m_a']}, {pair['m_atilde']})  {pair['kind']}")
    for i, report in enumerate(doc.get('reports') or [], start=1):
        lines.append(f"report {i}:")
        width = max(len(k) for k in report) if report else 0
        for key, value in report.items():
            lines.append(f"  {key.ljust(width)}  {value}")
    return '\n'.join(lines) + '\n'


RENDERERS = {
    'json': render_json,
    'csv': render_csv,
    'text': render_text,
}


def render(document, fmt=Config.DEFAULT_FORMAT):
    """Render the document in one of RENDERERS"""
    try:
        return RENDERERS[fmt](document)
    except KeyError:
        raise ValueError(f"Unknown output format {fmt!r}, expected one of {sorted(RENDERERS)}")


def write_pgm(path, grid):
    """
    Binary P5 graymap of |amplitude|, max-normalized to 8 bits

    Rows of grid become image rows.
    """
    grid = np.abs(np.asarray(grid, dtype=float))
    height, width = grid.shape
    peak = grid.max()
    scaled = np.zeros_like(grid) if peak == 0 else grid / peak * 255
    pixels = np.rint(scaled).astype(np.uint8)
    path = Path(path)
    Config.init_app(str(path))
    with open(path, 'wb') as fh:
        fh.write(f'P5\n{width} {height}\n255\n'.encode('ascii'))
        fh.write(pixels.tobytes())
    logger.info("✅ Heatmap written to %s (%dx%d)", path, width, height)
    return path


def write_document(text, path):
    """Write the rendered document, creating parent folders"""
    Config.init_app(path)
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(text)
