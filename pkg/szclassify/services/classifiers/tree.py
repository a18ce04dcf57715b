# =======================================================================================
# szclassify/services/classifiers/tree.py - Information-Gain Decision Tree
# =======================================================================================
from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union

import numpy as np
from scipy.special import entr

from ...models.dataset import FeatureMatrix
from ...models.enums import Label
from ...models.schemas import TreeConfig
from ...utils.exceptions import EmptyTrainingSet

_GAIN_EPS = 1e-12
_LN2 = np.log(2.0)


@dataclass(frozen=True)
class Leaf:
    label: Label
    purity: float
    n_samples: int


@dataclass(frozen=True)
class Split:
    """Rows with value <= threshold go left, the rest go right."""
    column: str
    column_index: int
    threshold: float
    left: "TreeNode"
    right: "TreeNode"


TreeNode = Union[Leaf, Split]


def binary_entropy(pos: np.ndarray, n: np.ndarray) -> np.ndarray:
    """Label entropy in bits of nodes holding `pos` SZ rows out of `n`."""
    p = np.divide(pos, n, out=np.zeros(np.shape(pos), dtype=np.float64), where=np.asarray(n) > 0)
    return (entr(p) + entr(1.0 - p)) / _LN2


def best_split(X: np.ndarray, y: np.ndarray) -> Optional[Tuple[int, float, float]]:
    """(column index, threshold, gain) with the highest information gain.

    Candidate thresholds are midpoints between consecutive distinct values.
    Ties go to the lower column index, then the lower threshold.
    """
    n = len(y)
    total_pos = int(y.sum())
    parent = float(binary_entropy(np.array(total_pos), np.array(n)))
    best: Optional[Tuple[int, float, float]] = None

    for j in range(X.shape[1]):
        order = np.argsort(X[:, j], kind="stable")
        xs = X[order, j]
        ys = y[order]
        cut = np.flatnonzero(xs[:-1] < xs[1:])
        if cut.size == 0:
            continue

        n_left = cut + 1
        pos_left = np.cumsum(ys)[cut]
        n_right = n - n_left
        pos_right = total_pos - pos_left
        children = (n_left * binary_entropy(pos_left, n_left) + n_right * binary_entropy(pos_right, n_right)) / n
        gains = parent - children

        top = gains.max()
        k = int(np.flatnonzero(gains >= top - _GAIN_EPS)[0])
        if best is None or gains[k] > best[2] + _GAIN_EPS:
            a, b = xs[cut[k]], xs[cut[k] + 1]
            mid = (a + b) / 2.0
            best = (j, float(mid if mid < b else a), float(gains[k]))

    return best


def _majority_leaf(y: np.ndarray) -> Leaf:
    n = len(y)
    pos = int(y.sum())
    # equal counts resolve to HC
    label = Label.SZ if pos > n - pos else Label.HC
    return Leaf(label=label, purity=max(pos, n - pos) / n, n_samples=n)


def grow_tree(X: np.ndarray, y: np.ndarray, columns: Tuple[str, ...], cfg: TreeConfig) -> TreeNode:
    """Grow depth-first with an explicit stack, then assemble nodes bottom-up."""
    # plan[i] = ["leaf", Leaf] or ["split", column index, threshold, left id, right id]
    plan: List[tuple] = []
    stack = [(np.arange(len(y)), 0, None)]  # (rows, depth, (parent id, side))

    while stack:
        rows, depth, parent = stack.pop()
        node_id = len(plan)
        if parent is not None:
            pid, side = parent
            plan[pid][side] = node_id

        ys = y[rows]
        pos = int(ys.sum())
        stop = (
            pos == 0 or pos == len(rows)
            or (cfg.max_depth is not None and depth >= cfg.max_depth)
            or len(rows) < cfg.min_samples_split
        )
        split = None if stop else best_split(X[rows], ys)
        if split is None or split[2] <= _GAIN_EPS:
            plan.append(["leaf", _majority_leaf(ys)])
            continue

        j, threshold, _ = split
        plan.append(["split", j, threshold, None, None])
        goes_left = X[rows, j] <= threshold
        # right pushed first so the left subtree is planned first
        stack.append((rows[~goes_left], depth + 1, (node_id, 4)))
        stack.append((rows[goes_left], depth + 1, (node_id, 3)))

    built: Dict[int, TreeNode] = {}
    for node_id in range(len(plan) - 1, -1, -1):
        entry = plan[node_id]
        if entry[0] == "leaf":
            built[node_id] = entry[1]
        else:
            _, j, threshold, left_id, right_id = entry
            built[node_id] = Split(columns[j], j, threshold, built.pop(left_id), built.pop(right_id))
    return built[0]


def route(node: TreeNode, x: np.ndarray) -> Leaf:
    while isinstance(node, Split):
        node = node.left if x[node.column_index] <= node.threshold else node.right
    return node


def tree_depth(node: TreeNode) -> int:
    depth, frontier = 0, [(node, 0)]
    while frontier:
        current, d = frontier.pop()
        depth = max(depth, d)
        if isinstance(current, Split):
            frontier += [(current.left, d + 1), (current.right, d + 1)]
    return depth


def node_to_dict(node: TreeNode) -> Dict[str, Any]:
    if isinstance(node, Leaf):
        return {"leaf": node.label.name, "purity": node.purity, "n": node.n_samples}
    return {
        "column": node.column,
        "index": node.column_index,
        "threshold": node.threshold,
        "left": node_to_dict(node.left),
        "right": node_to_dict(node.right),
    }


def node_from_dict(data: Dict[str, Any]) -> TreeNode:
    if "leaf" in data:
        return Leaf(Label[data["leaf"]], float(data["purity"]), int(data["n"]))
    return Split(
        data["column"], int(data["index"]), float(data["threshold"]),
        node_from_dict(data["left"]), node_from_dict(data["right"]),
    )


@dataclass(frozen=True)
class TreeModel:
    """A fitted decision tree. Consumes unstandardized values."""
    config: TreeConfig
    columns: Tuple[str, ...]
    root: TreeNode
    kind: str = "dt"

    def predict_values(self, X: np.ndarray) -> np.ndarray:
        return np.array([int(route(self.root, x).label) for x in X], dtype=np.int8)

    @property
    def depth(self) -> int:
        return tree_depth(self.root)

    def params_to_dict(self) -> Dict[str, Any]:
        return {"root": node_to_dict(self.root)}

    @classmethod
    def from_params(cls, config: TreeConfig, columns: Tuple[str, ...], params: Dict[str, Any]) -> "TreeModel":
        return cls(config=config, columns=columns, root=node_from_dict(params["root"]))


def fit_tree(train: FeatureMatrix, cfg: TreeConfig) -> TreeModel:
    if train.n_rows == 0:
        raise EmptyTrainingSet("Cannot fit a decision tree on zero rows")
    root = grow_tree(train.values, train.labels.astype(np.int64), train.names, cfg)
    return TreeModel(config=cfg, columns=train.names, root=root)
