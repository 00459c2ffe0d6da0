"""Search caps shared by the sweep and the CLI."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

from .construct import DEFAULT_MAX_ORDER
from .graph import DEFAULT_EDGE_COLOR_CAP, DEFAULT_EDGE_COLOR_TIMEOUT_MS, DEFAULT_ISO_CAP, DEFAULT_MDS_CAP
from .ring import DEFAULT_SUBRING_ENUM_CAP

ENV_MAX_ORDER = "RINGLAB_MAX_ORDER"


@dataclass(frozen=True)
class Limits:
    max_order: int = DEFAULT_MAX_ORDER
    subring_enum_order: int = DEFAULT_SUBRING_ENUM_CAP
    mds_vertices: int = DEFAULT_MDS_CAP
    edge_color_edges: int = DEFAULT_EDGE_COLOR_CAP
    edge_color_timeout_ms: float | None = DEFAULT_EDGE_COLOR_TIMEOUT_MS
    iso_vertices: int = DEFAULT_ISO_CAP
    isoclinism_order: int = 64

    def with_env(self) -> "Limits":
        raw = os.environ.get(ENV_MAX_ORDER)
        if raw:
            return replace(self, max_order=int(raw))
        return self


DEFAULT_LIMITS = Limits()
