from pathlib import Path
from typing import Dict, List, Sequence, Tuple
import logging
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

logger = logging.getLogger(__name__)

# SVG 中的元素 id 與日期都固定，重複運行得到相同文件
plt.rcParams["svg.hashsalt"] = "wen-plaquette-sim"
_SVG_METADATA = {"Date": None}


def _save(fig, path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(path, format="svg", bbox_inches="tight", metadata=_SVG_METADATA)
    plt.close(fig)
    logger.debug(f"wrote {path}")
    return path


def plot_scan(path: Path, curves: Dict[float, Dict[str, np.ndarray]]) -> Path:
    """<W> 與 P 隨 J 的曲線，疊加 J/sqrt(g²+J²)、g/sqrt(g²+J²)"""
    fig, (ax_w, ax_p) = plt.subplots(1, 2, figsize=(10, 4))
    for g, data in curves.items():
        line, = ax_w.plot(data["J"], data["wilson"], "o", markersize=3, label=f"g={g:g}")
        ax_w.plot(data["J"], data["wilson_theory"], "-", color=line.get_color(), linewidth=1)
        ax_p.plot(data["J"], data["P"], "o", markersize=3, color=line.get_color(), label=f"g={g:g}")
        ax_p.plot(data["J"], data["P_theory"], "-", color=line.get_color(), linewidth=1)
    ax_w.set_xlabel("J")
    ax_w.set_ylabel("<W(C)>")
    ax_p.set_xlabel("J")
    ax_p.set_ylabel("P")
    ax_w.legend()
    ax_p.legend()
    return _save(fig, path)


def plot_sweep(
    path: Path,
    schedule_rows: Sequence[Tuple[float, float, float]],
    steps: Sequence[Tuple[float, float, float]]
) -> Path:
    """左：J(t) 與中點採樣；右：每步保真度。steps 為 (t_m, J_m, fidelity)"""
    fig, (ax_j, ax_f) = plt.subplots(1, 2, figsize=(10, 4))
    times = [row[0] for row in schedule_rows]
    values = [row[1] for row in schedule_rows]
    ax_j.plot(times, values, "-", linewidth=1)
    ax_j.plot([s[0] for s in steps], [s[1] for s in steps], "o", markersize=3)
    ax_j.set_xlabel("t")
    ax_j.set_ylabel("J(t)")
    ax_f.plot([s[0] for s in steps], [s[2] for s in steps], "o-", markersize=3)
    ax_f.set_xlabel("t")
    ax_f.set_ylabel("|<psi|psi_g>|")
    return _save(fig, path)


def plot_correlations(path: Path, ratios: List[float], sites: List[int], raw: np.ndarray) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    image = ax.imshow(raw, aspect="auto", cmap="viridis", vmin=-1.0, vmax=1.0)
    ax.set_xticks(range(len(sites)))
    ax.set_xticklabels([str(k) for k in sites])
    ax.set_yticks(range(len(ratios)))
    ax.set_yticklabels([f"{r:g}" for r in ratios])
    ax.set_xlabel("k")
    ax.set_ylabel("J/g")
    fig.colorbar(image, ax=ax, label="<S1 Sk>")
    return _save(fig, path)
