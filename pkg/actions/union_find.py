class UnionFind:
    """Disjoint sets over 0..n-1 with union by rank."""

    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x, y):
        x, y = self.find(x), self.find(y)
        if x == y:
            return
        if self.rank[x] < self.rank[y]:
            x, y = y, x
        elif self.rank[x] == self.rank[y]:
            self.rank[x] += 1
        self.parent[y] = x

    def groups(self):
        """Parts as sorted lists, ordered by their smallest element."""
        parts = {}
        for x in range(len(self.parent)):
            parts.setdefault(self.find(x), []).append(x)
        return sorted(parts.values(), key=lambda part: part[0])
