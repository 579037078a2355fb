"""Pure-Python versions of the compiled kernels in ``_kernels.pyx``."""
from collections import deque


def extend_flag_map(flags, adj, base, target, flag_img, face_img, queue):
    fl = flags.tolist()
    ad = adj.tolist()
    fimg = [-1] * len(fl)
    gimg = [-1] * len(face_img)
    ok = True

    def assign(t, u):
        fimg[t] = u
        for a, b in zip(fl[t], fl[u]):
            c = gimg[a]
            if c == -1:
                gimg[a] = b
            elif c != b:
                return False
        return True

    if not assign(base, target):
        ok = False
    todo = deque([base])
    while ok and todo:
        t = todo.popleft()
        u = fimg[t]
        for t2, u2 in zip(ad[t], ad[u]):
            if fimg[t2] == -1:
                if not assign(t2, u2):
                    ok = False
                    break
                todo.append(t2)
            elif fimg[t2] != u2:
                ok = False
                break
    flag_img[:] = fimg
    face_img[:] = gimg
    return ok


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def union_perm(parent, perm):
    p = parent.tolist()
    for x, y in enumerate(perm.tolist()):
        a, b = _find(p, x), _find(p, y)
        if a < b:
            p[b] = a
        elif b < a:
            p[a] = b
    parent[:] = p


def resolve(parent):
    p = parent.tolist()
    parent[:] = [_find(p, x) for x in range(len(p))]
