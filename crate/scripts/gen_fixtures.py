#!/usr/bin/env python3
"""Regenerates the random benchmark maps in crates/core/fixtures.

Obstacles are added one at a time (mega-aligned rectangles first, then
single subcells) and rejected whenever the free mega-cells would split or a
partially blocked mega-cell would leave free subcells unreachable from the
rest of the map. Output is deterministic for a given seed.
"""
import random
import sys
from collections import deque
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "crates" / "core" / "fixtures"

MAPS = [
    # name, size, obstacles, aligned, rectangle side range, robot megas, seed
    ("small_d", 32, 141, False, (2, 5), [(1, 1), (14, 14), (1, 14)], 11),
    ("small_e", 32, 228, False, (2, 5), [(1, 1), (14, 14), (14, 1)], 12),
    ("map_a", 64, 414, True, (1, 4), [(1, 1), (30, 30), (1, 30)], 21),
    ("map_b", 64, 1212, True, (2, 6), [(1, 1), (30, 30), (1, 30), (30, 1)], 22),
    ("map_c", 64, 1782, True, (2, 6), [(1, 1), (30, 30), (1, 30), (30, 1), (15, 15)], 23),
]


def neighbors(r, c, n):
    for dr, dc in ((-1, 0), (0, -1), (1, 0), (0, 1)):
        if 0 <= r + dr < n and 0 <= c + dc < n:
            yield r + dr, c + dc


def valid(blocked, n, robots):
    m = n // 2
    mega_free = [[all(not blocked[2 * r + dr][2 * c + dc] for dr in (0, 1) for dc in (0, 1))
                  for c in range(m)] for r in range(m)]
    if not all(mega_free[r][c] for r, c in robots):
        return False
    seen = {robots[0]}
    q = deque([robots[0]])
    while q:
        r, c = q.popleft()
        for nb in neighbors(r, c, m):
            if mega_free[nb[0]][nb[1]] and nb not in seen:
                seen.add(nb)
                q.append(nb)
    if sum(map(sum, mega_free)) != len(seen):
        return False
    # every free subcell must connect to a subcell of a free mega-cell
    reach = set()
    q = deque()
    for r in range(n):
        for c in range(n):
            if mega_free[r // 2][c // 2]:
                reach.add((r, c))
                q.append((r, c))
    while q:
        r, c = q.popleft()
        for nb in neighbors(r, c, n):
            if not blocked[nb[0]][nb[1]] and nb not in reach:
                reach.add(nb)
                q.append(nb)
    free = sum(1 for r in range(n) for c in range(n) if not blocked[r][c])
    return free == len(reach)


def generate(n, target, aligned, sides, robots, seed):
    rng = random.Random(seed)
    blocked = [[False] * n for _ in range(n)]
    count = 0
    attempts = 0
    # rectangles while they fit, then single subcells next to existing ones
    while attempts < 400000:
        attempts += 1
        h, w = rng.randint(*sides), rng.randint(*sides)
        if aligned:
            r, c = rng.randrange(n // 2 - h + 1), rng.randrange(n // 2 - w + 1)
            cells = [(2 * (r + i) + dr, 2 * (c + j) + dc)
                     for i in range(h) for j in range(w) for dr in (0, 1) for dc in (0, 1)]
        else:
            r, c = rng.randrange(n - h + 1), rng.randrange(n - w + 1)
            cells = [(r + i, c + j) for i in range(h) for j in range(w)]
        if count + len(cells) > target:
            if target - count < 4:
                break
            continue
        if any(blocked[y][x] for y, x in cells):
            continue
        for y, x in cells:
            blocked[y][x] = True
        if valid(blocked, n, robots):
            count += len(cells)
        else:
            for y, x in cells:
                blocked[y][x] = False
    while count < target:
        attempts += 1
        if attempts > 800000:
            sys.exit(f"could not place {target} obstacles")
        y, x = rng.randrange(n), rng.randrange(n)
        if blocked[y][x] or not any(blocked[a][b] for a, b in neighbors(y, x, n)):
            continue
        blocked[y][x] = True
        if valid(blocked, n, robots):
            count += 1
        else:
            blocked[y][x] = False
    return blocked


def main():
    for name, n, target, aligned, sides, robots, seed in MAPS:
        blocked = generate(n, target, aligned, sides, robots, seed)
        rows = [["#" if b else "." for b in row] for row in blocked]
        for i, (r, c) in enumerate(robots):
            rows[2 * r][2 * c] = str(i)
        ratio = target / (n * n)
        header = f"; {name}: {n}x{n}, {target} obstacles ({ratio:.1%}), {len(robots)} robots, seed {seed}\n"
        (OUT / f"{name}.map").write_text(header + "\n".join("".join(r) for r in rows) + "\n")
        print(f"{name}: {target} obstacles, ratio {ratio:.4f}")


if __name__ == "__main__":
    main()
