"""Pure-Python hot loops; reference twin of ``_ckernels.pyx``."""

RESET_CODE = -(1 << 30)


def _move(nxt, eff, m, nsyms, q, n, a):
    if q < 0:
        return -1, 0
    i = (q * (m + 1) + (n if n < m else m)) * nsyms + a
    t = nxt[i]
    if t < 0:
        return -1, 0
    e = eff[i]
    return t, (0 if e == RESET_CODE else n + e)


def distinguish(nxt1, eff1, fin1, m1, nxt2, eff2, fin2, m2, nsyms,
                s1, c1, s2, c2, max_len, dedup=True):
    """Length-lex minimal word accepted from exactly one configuration.

    Tables are flat: index ``(state * (m + 1) + test) * nsyms + symbol``;
    a missing move is ``-1`` and leads to an absorbing rejecting state -1.
    Returns a list of symbol indices or ``None``.

    Layers are expanded parent-by-parent in symbol order, so the first
    arrival at a configuration pair carries the smallest word reaching it;
    acceptance depends only on the pair, hence later arrivals can be dropped.
    """

    def differs(t1, t2):
        return (t1 >= 0 and fin1[t1]) != (t2 >= 0 and fin2[t2])

    if differs(s1, s2):
        return []
    if not dedup:
        return _distinguish_nodedup(nxt1, eff1, m1, nxt2, eff2, m2, nsyms,
                                    s1, c1, s2, c2, max_len, differs)
    root = (s1, c1, s2, c2)
    parent = {root: None}
    layer = [root]
    for _depth in range(max_len):
        nxt_layer = []
        for node in layer:
            q1, n1, q2, n2 = node
            for a in range(nsyms):
                t1, k1 = _move(nxt1, eff1, m1, nsyms, q1, n1, a)
                t2, k2 = _move(nxt2, eff2, m2, nsyms, q2, n2, a)
                child = (t1, k1, t2, k2)
                if child in parent:
                    continue
                parent[child] = (node, a)
                if differs(t1, t2):
                    return _unwind(parent, child)
                nxt_layer.append(child)
        if not nxt_layer:
            return None
        layer = nxt_layer
    return None


def _distinguish_nodedup(nxt1, eff1, m1, nxt2, eff2, m2, nsyms,
                         s1, c1, s2, c2, max_len, differs):
    layer = [((s1, c1, s2, c2), ())]
    for _depth in range(max_len):
        nxt_layer = []
        for (q1, n1, q2, n2), word in layer:
            for a in range(nsyms):
                t1, k1 = _move(nxt1, eff1, m1, nsyms, q1, n1, a)
                t2, k2 = _move(nxt2, eff2, m2, nsyms, q2, n2, a)
                if differs(t1, t2):
                    return list(word) + [a]
                nxt_layer.append(((t1, k1, t2, k2), word + (a,)))
        layer = nxt_layer
    return None


def _unwind(parent, node):
    word = []
    while parent[node] is not None:
        node, a = parent[node]
        word.append(a)
    word.reverse()
    return word


class Runner:
    """Simulator over flat tables; ``run`` returns (state, counter) or None."""

    def __init__(self, nxt, eff, fin, m, nsyms):
        self.nxt, self.eff, self.fin = list(nxt), list(eff), list(fin)
        self.m, self.nsyms = m, nsyms

    def run(self, s, c, word):
        nxt, eff, m, nsyms = self.nxt, self.eff, self.m, self.nsyms
        for a in word:
            i = (s * (m + 1) + (c if c < m else m)) * nsyms + a
            t = nxt[i]
            if t < 0:
                return None
            e = eff[i]
            c = 0 if e == RESET_CODE else c + e
            s = t
        return s, c

    def accepts(self, s, c, word):
        end = self.run(s, c, word)
        return end is not None and self.fin[end[0]]
