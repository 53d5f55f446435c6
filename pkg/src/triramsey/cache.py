"""JSON result cache shared by the CLI and the HTTP service.

Big integers serialize as decimal strings, colorings as lowercase hex
bitstrings.  Loading is defensive: structurally bad entries are dropped
with a warning, and every stored draw witness is re-verified against the
rules before it is trusted.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

from .engine import GameConfig, InvalidConfig, config_from_dict, config_to_dict
from .search import coloring_from_hex, coloring_to_hex, is_draw_coloring

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
DEFAULT_CACHE_PATH = "./triramsey-cache.json"


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


@dataclass
class R1Entry:
    p: int
    q: int
    k: int
    status: str  # exact | lower_bound
    value: int
    witness_m: int | None = None
    witness_coloring: int | None = None
    verified_at: str | None = None


@dataclass
class ResultCache:
    path: str = DEFAULT_CACHE_PATH
    brackets: dict[tuple[int, int], int] = field(default_factory=dict)
    r1_results: dict[tuple[int, int, int], R1Entry] = field(default_factory=dict)
    solved_games: dict[tuple, str] = field(default_factory=dict)
    witnesses: list[dict] = field(default_factory=list)

    # -- queries -------------------------------------------------------------

    def get_bracket(self, n: int, k: int) -> int | None:
        return self.brackets.get((n, k))

    def put_bracket(self, n: int, k: int, value: int) -> None:
        self.brackets[(n, k)] = value

    def get_r1(self, p: int, q: int, k: int) -> R1Entry | None:
        return self.r1_results.get((p, q, k))

    def put_r1(self, entry: R1Entry) -> None:
        self.r1_results[(entry.p, entry.q, entry.k)] = entry

    @staticmethod
    def _config_key(config: GameConfig) -> tuple:
        return (config.m, config.p, config.q, config.k, config.variant.value)

    def get_solved(self, config: GameConfig) -> str | None:
        return self.solved_games.get(self._config_key(config))

    def put_solved(self, config: GameConfig, outcome: str) -> None:
        self.solved_games[self._config_key(config)] = outcome

    def add_witness(self, config: GameConfig, coloring: int) -> None:
        self.witnesses.append(
            {
                "config": config_to_dict(config),
                "coloring": coloring_to_hex(coloring, config.cell_count()),
                "verifiedAt": _now(),
            }
        )

    # -- persistence -----------------------------------------------------------

    def save(self) -> None:
        payload = {
            "schemaVersion": SCHEMA_VERSION,
            "brackets": [
                {"n": n, "k": k, "value": str(v)}
                for (n, k), v in sorted(self.brackets.items())
            ],
            "r1Results": [
                {
                    "p": e.p,
                    "q": e.q,
                    "k": e.k,
                    "status": e.status,
                    "value": e.value,
                    **(
                        {
                            "witness": {
                                "m": e.witness_m,
                                "coloring": coloring_to_hex(
                                    e.witness_coloring,
                                    GameConfig(e.witness_m, e.p, e.q, e.k).cell_count(),
                                ),
                                "verifiedAt": e.verified_at or _now(),
                            }
                        }
                        if e.witness_m is not None
                        else {}
                    ),
                }
                for e in self.r1_results.values()
            ],
            "solvedGames": [
                {
                    "config": {"m": m, "p": p, "q": q, "k": k, "variant": variant},
                    "outcome": outcome,
                }
                for (m, p, q, k, variant), outcome in self.solved_games.items()
            ],
            "witnesses": self.witnesses,
        }
        directory = os.path.dirname(os.path.abspath(self.path))
        fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(payload, fh, indent=2)
            os.replace(tmp, self.path)
        except BaseException:
            os.unlink(tmp)
            raise


def load_cache(path: str = DEFAULT_CACHE_PATH) -> ResultCache:
    cache = ResultCache(path=path)
    if not os.path.exists(path):
        return cache
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        log.warning("cache %s unreadable (%s); starting empty", path, exc)
        return cache
    if payload.get("schemaVersion") != SCHEMA_VERSION:
        log.warning("cache %s has schema %r, expected %s; starting empty",
                    path, payload.get("schemaVersion"), SCHEMA_VERSION)
        return cache

    for entry in payload.get("brackets", []):
        try:
            n, k, value = int(entry["n"]), int(entry["k"]), int(entry["value"])
            if n < 0 or not 0 <= k <= n or value < 1:
                raise ValueError("implausible bracket entry")
            cache.brackets[(n, k)] = value
        except (KeyError, TypeError, ValueError) as exc:
            log.warning("dropping bad bracket cache entry %r (%s)", entry, exc)

    for entry in payload.get("r1Results", []):
        try:
            e = R1Entry(
                p=int(entry["p"]),
                q=int(entry["q"]),
                k=int(entry["k"]),
                status=str(entry["status"]),
                value=int(entry["value"]),
            )
            if e.status not in ("exact", "lower_bound"):
                raise ValueError(f"bad status {e.status}")
            witness = entry.get("witness")
            if witness is not None:
                m = int(witness["m"])
                coloring = coloring_from_hex(witness["coloring"])
                config = GameConfig(m, e.p, e.q, e.k)
                if not is_draw_coloring(coloring, config):
                    raise ValueError("stored witness fails re-verification")
                e.witness_m, e.witness_coloring = m, coloring
                e.verified_at = witness.get("verifiedAt")
            cache.r1_results[(e.p, e.q, e.k)] = e
        except (KeyError, TypeError, ValueError, InvalidConfig) as exc:
            log.warning("dropping bad r1 cache entry %r (%s)", entry, exc)

    for entry in payload.get("solvedGames", []):
        try:
            config = config_from_dict(entry["config"])
            outcome = str(entry["outcome"])
            if outcome not in ("FirstPlayerWin", "SecondPlayerWin", "DrawValue"):
                raise ValueError(f"bad outcome {outcome}")
            cache.solved_games[cache._config_key(config)] = outcome
        except (KeyError, TypeError, ValueError, InvalidConfig) as exc:
            log.warning("dropping bad solved-game cache entry %r (%s)", entry, exc)

    for entry in payload.get("witnesses", []):
        try:
            config = config_from_dict(entry["config"])
            coloring = coloring_from_hex(entry["coloring"])
            if not is_draw_coloring(coloring, config):
                raise ValueError("stored witness fails re-verification")
            cache.witnesses.append(entry)
        except (KeyError, TypeError, ValueError, InvalidConfig) as exc:
            log.warning("dropping bad witness cache entry %r (%s)", entry, exc)

    return cache
