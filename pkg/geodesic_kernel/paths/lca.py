"""Static O(1) LCA via Euler tour + sparse table."""
from typing import List, Sequence

import numpy as np


class EulerLCA:
    """在父指针数组上构建欧拉序与稀疏表，常数时间回答最近公共祖先"""

    __slots__ = ("first_occ", "euler", "depths", "st", "log")

    def __init__(self, parent: Sequence[int], depth: Sequence[int], root: int):
        children: List[List[int]] = [[] for _ in range(len(parent))]
        for child, par in enumerate(parent):
            if par >= 0:
                children[par].append(child)

        self.euler: List[int] = []
        self.first_occ = np.full(len(parent), -1, dtype=np.int64)
        # 迭代 DFS，避免深树递归溢出
        stack = [(root, 0)]
        while stack:
            u, k = stack.pop()
            if k == 0:
                self.first_occ[u] = len(self.euler)
            self.euler.append(u)
            if k < len(children[u]):
                stack.append((u, k + 1))
                stack.append((children[u][k], 0))

        euler = np.asarray(self.euler, dtype=np.int64)
        self.depths = np.asarray(depth, dtype=np.int64)[euler]
        m = len(self.euler)
        k_max = int(np.floor(np.log2(m))) + 1
        self.log = np.zeros(m + 1, dtype=np.int64)
        self.log[2:] = np.floor(np.log2(np.arange(2, m + 1))).astype(np.int64)

        st = np.empty((k_max, m), dtype=np.int64)
        st[0] = np.arange(m)
        for k in range(1, k_max):
            half = 1 << (k - 1)
            width = m - (1 << k) + 1
            left = st[k - 1, :width]
            right = st[k - 1, half:half + width]
            st[k, :width] = np.where(self.depths[left] <= self.depths[right], left, right)
        self.st = st

    def lca(self, u: int, v: int) -> int:
        l, r = int(self.first_occ[u]), int(self.first_occ[v])
        if l > r:
            l, r = r, l
        j = int(self.log[r - l + 1])
        left = self.st[j, l]
        right = self.st[j, r - (1 << j) + 1]
        return self.euler[left] if self.depths[left] <= self.depths[right] else self.euler[right]
