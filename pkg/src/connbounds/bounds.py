"""Recursive upper bounds for linear subspaces on intersections over C_i fields.

Two quantities are bounded, as functions of a multidegree d, a target
dimension m and a field class:

  N(d; m; k): the least ambient dimension from which EVERY intersection of
      multidegree d in projective space over k contains a linear subspace of
      dimension m.
  L(d; m; k): as above, and additionally the dimension-m Chow group of the
      intersection is generated by the class of one such subspace.

The engine returns the minimum over a fixed set of certified derivation
rules, memoized on the query key, together with a replayable derivation:

  empty_base          N/L((); m) = m
  all_linear_base     N/L((1,...,1); m) = m + r
  strip_linear        one linear equation drops the ambient dimension by one
  tsen_lang_base      N((d); 0; C_i) <= d**i
  lang_nagata_system  N(d; 0; C_i) <= sum d_j**i
  predonzan_c0        over C_0: least n >= m + r with non-negative expected
                      Fano dimension (togglable; its hypotheses are assumed)
  split_system        N(d; m) <= N(prefix; N(suffix; m)) for each sorted split
  polar_projection    N((d); m) <= max{N((d); 0), 1 + N((1,2,...,d); m - 1)}
  chow_from_subspace  L(d; m; k) <= N(d; l*; k), l* = max over m' in [0, m]
                      of L(d - 1; m'; k'), where k' is C_{i + (m - m')} in
                      standard mode and k itself in universal-domain mode
  roitman_ch0         optional: L(d; 0; C_0) <= sum d_j

The polar rule carries a +1 the classical statement omits: the polar system
of the blown-up point lives on the target of the projection, one dimension
down, so the subspace there needs ambient n - 1.  Without the +1 the rule
certifies falsehoods (a smooth plane conic contains no line).

Values grow like iterated exponentials: over C_i (i >= 1) the polar chain
forces N((2); m) = 2m + 2**i, hence N((3); m) doubles per step of m, and
degree-4 chains tower.  Single-degree chains whose one-step map is exactly
affine are therefore fast-forwarded with exact affine/geometric closed forms
(bit-identical to literal iteration; the test suite checks this), and the
engine enforces step and bit budgets, raising BoundBudgetError rather than
looping for geological time or allocating petabyte integers.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dataclass_field

from .core import FieldClass, Multidegree, binomial

RULE_EMPTY = "empty_base"
RULE_ALL_LINEAR = "all_linear_base"
RULE_STRIP = "strip_linear"
RULE_TSEN = "tsen_lang_base"
RULE_LANG_NAGATA = "lang_nagata_system"
RULE_PREDONZAN = "predonzan_c0"
RULE_SPLIT = "split_system"
RULE_POLAR = "polar_projection"
RULE_CHOW = "chow_from_subspace"
RULE_ROITMAN = "roitman_ch0"

STANDARD = "standard"
UNIVERSAL = "universal_domain"

CACHE_VERSION = 1


class _Infinite:
    """No rule chain terminates for the key (cannot happen for C_i fields)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"


INFINITE = _Infinite()


def is_finite(value) -> bool:
    return value is not INFINITE


class BoundBudgetError(RuntimeError):
    """The computation exceeded the configured step or bit budget."""

    def __init__(self, key, reason):
        super().__init__(f"{reason} while computing {key}")
        self.key = key
        self.reason = reason


class MemoCycleError(RuntimeError):
    """A key re-entered its own evaluation; the rule system must not cycle."""


@dataclass(frozen=True)
class BoundKey:
    kind: str               # "N" | "L"
    degrees: Multidegree
    m: int
    c_level: int
    mode: str = STANDARD

    def __post_init__(self):
        if self.kind not in ("N", "L"):
            raise ValueError(f"kind must be 'N' or 'L', got {self.kind!r}")
        if self.m < 0:
            raise ValueError("target dimension m must be >= 0")
        if self.c_level < 0:
            raise ValueError("c_level must be >= 0")
        if self.mode not in (STANDARD, UNIVERSAL):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == UNIVERSAL and (self.kind != "L" or self.c_level != 0):
            raise ValueError("universal-domain mode needs kind 'L' and c_level 0")

    def __str__(self):
        mode = "" if self.mode == STANDARD else ", universal domain"
        if self.m.bit_length() > 256:
            m_text = f"~2^{self.m.bit_length() - 1}"
        else:
            m_text = str(self.m)
        return f"{self.kind}({tuple(self.degrees)}; m={m_text}; C_{self.c_level}{mode})"

    def __repr__(self):
        return f"BoundKey<{self}>"


@dataclass(frozen=True)
class BoundResult:
    key: BoundKey
    value: object           # int, or INFINITE
    rule: str
    children: tuple         # child BoundKeys, in rule-specific order
    params: dict = dataclass_field(default_factory=dict)


@dataclass(frozen=True)
class BoundConfig:
    predonzan: bool = True
    roitman: bool = False
    step_budget: int = 300_000
    bit_budget: int = 33_554_432        # 2**25 bits, about 4 MB per value
    chain_threshold: int = 96           # literal polar descent below this


def degree_decrement(d: Multidegree) -> Multidegree:
    """Subtract 1 from every entry and drop the zeros.

    Dropping is sound: deleting an equation enlarges the intersection, which
    can only make containing a linear subspace easier.
    """
    return Multidegree(x - 1 for x in d if x - 1 >= 1)


def tsen_lang_base(d: int, i: int) -> int:
    """d**i variables-over-degree bound: one form of degree d over a C_i field."""
    if d < 1 or i < 0:
        raise ValueError("need d >= 1 and i >= 0")
    return d ** i


def lang_nagata_system_base(d: Multidegree, i: int) -> int:
    """sum d_j**i, the system version of the Tsen-Lang bound."""
    if i < 0:
        raise ValueError("need i >= 0")
    if any(x < 1 for x in d):
        raise ValueError("degrees must be >= 1")
    return sum(x ** i for x in d)


def fano_expected_dim(n: int, d: Multidegree, m: int) -> int:
    """Expected dimension (m+1)(n-m) - sum C(d_i + m, m) of the m-plane scheme."""
    if m < 0 or n < m:
        raise ValueError("need 0 <= m <= n")
    return (m + 1) * (n - m) - sum(binomial(x + m, m) for x in d)


def predonzan_min_n(d: Multidegree, m: int) -> int:
    """Least n with fano_expected_dim(n, d, m) >= 0 and n >= m + r.

    Valid as an upper bound for N(d; m; C_0) under the assumed existence
    hypotheses (all degrees >= 2; strip linear entries first).
    """
    if any(x < 2 for x in d):
        raise ValueError("predonzan base needs every degree >= 2")
    if m < 0:
        raise ValueError("need m >= 0")
    total = sum(binomial(x + m, m) for x in d)
    n0 = m + -(-total // (m + 1))
    return max(n0, m + len(d))


@dataclass(frozen=True)
class _Affine:
    """a*x + b, valid for arguments x >= x0."""

    a: int
    b: int
    x0: int

    def after(self, g: "_Affine") -> "_Affine":
        # self applied to the output of g
        need = -(-(self.x0 - g.b) // g.a) if self.x0 > g.b else 0
        return _Affine(self.a * g.a, self.a * g.b + self.b, max(g.x0, need))

    def plus(self, c: int) -> "_Affine":
        return _Affine(self.a, self.b + c, self.x0)


_NONAFFINE = object()


def _anchor_point(shape: _Affine, base: int) -> int:
    need_for_base = 0
    if shape.b + 1 < base:
        need_for_base = -(-(base - shape.b - 1) // shape.a)
    return max(shape.x0, need_for_base, 1)


def _min_affine(cands):
    """Eventual pointwise minimum of affine candidates, with a validity threshold."""
    if any(c is _NONAFFINE for c in cands):
        return _NONAFFINE
    winner = min(cands, key=lambda f: (f.a, f.b))
    x0 = max(c.x0 for c in cands)
    for other in cands:
        if other.a > winner.a:
            # winner <= other from the crossover on
            cross = -(-(winner.b - other.b) // (other.a - winner.a))
            x0 = max(x0, cross)
    return _Affine(winner.a, winner.b, x0)


class BoundEngine:
    """Memoized evaluator for N/L bound keys with replayable derivations."""

    def __init__(self, config: BoundConfig | None = None):
        self.config = config or BoundConfig()
        self._memo: dict[BoundKey, BoundResult] = {}
        self._failed: dict[BoundKey, str] = {}
        self._tail_shapes: dict = {}
        self._tail_anchors: dict = {}
        self._steps = 0

    # -- public API ---------------------------------------------------------

    def n_bound(self, degrees, m: int, field: FieldClass) -> BoundResult:
        key = BoundKey("N", Multidegree(degrees), m, field.c_level)
        return self._run(key)

    def l_bound(self, degrees, m: int, field: FieldClass, mode: str = STANDARD) -> BoundResult:
        if mode == UNIVERSAL and not field.universal_domain:
            raise ValueError("universal-domain mode needs a universal-domain field")
        key = BoundKey("L", Multidegree(degrees), m, field.c_level, mode)
        return self._run(key)

    def result(self, key: BoundKey) -> BoundResult:
        return self._run(key)

    def trace(self, key: BoundKey) -> dict:
        """The derivation closure: every key reachable from `key`, with its step."""
        self._run(key)
        out = {}
        todo = [key]
        while todo:
            k = todo.pop()
            if k in out:
                continue
            res = self._memo[k]
            out[k] = res
            todo.extend(res.children)
        return out

    def rule_candidates(self, key: BoundKey) -> list:
        """(rule, value) for each applicable rule, evaluated independently.

        Used by dominance checks; evaluates children through the same memo.
        """
        self._run(key)
        cands = []
        for rule, maker in self._candidate_makers(key):
            cands.append((rule, maker()))
        return cands

    # -- memoized driver ----------------------------------------------------

    def _run(self, root: BoundKey) -> BoundResult:
        if root in self._memo:
            return self._memo[root]
        if root in self._failed:
            raise BoundBudgetError(root, self._failed[root])
        self._steps = 0
        stack = [(root, self._gen_for(root))]
        active = {root}
        send_val = None
        try:
            while stack:
                key, gen = stack[-1]
                try:
                    child = gen.send(send_val)
                except StopIteration as stop:
                    result = stop.value
                    if is_finite(result.value):
                        self._check_bits(key, result.value)
                    self._memo[key] = result
                    active.discard(key)
                    stack.pop()
                    send_val = result.value
                    continue
                if child in self._memo:
                    send_val = self._memo[child].value
                    continue
                if child in self._failed:
                    raise BoundBudgetError(child, self._failed[child])
                if child in active:
                    raise MemoCycleError(f"cycle through {child}")
                self._steps += 1
                if self._steps > self.config.step_budget:
                    raise BoundBudgetError(child, "step budget exceeded")
                stack.append((child, self._gen_for(child)))
                active.add(child)
                send_val = None
        except BaseException as err:
            for _, gen in stack:
                gen.close()
            if isinstance(err, BoundBudgetError):
                # a key fails when any candidate chain it needs fails; caching
                # both ends keeps later queries from re-diving the same frontier
                self._failed[root] = err.reason
                self._failed.setdefault(err.key, err.reason)
            raise
        return self._memo[root]

    def _gen_for(self, key: BoundKey):
        return self._n_gen(key) if key.kind == "N" else self._l_gen(key)

    def _check_bits(self, key, value: int):
        if value.bit_length() > 4 * self.config.bit_budget:
            raise BoundBudgetError(key, "value exceeds the bit budget")

    # -- kind N -------------------------------------------------------------

    def _n_gen(self, key: BoundKey):
        S, m, i = key.degrees, key.m, key.c_level
        r = len(S)
        if r == 0:
            return BoundResult(key, m, RULE_EMPTY, ())
        if all(x == 1 for x in S):
            return BoundResult(key, m + r, RULE_ALL_LINEAR, ())
        if i == 0 and m > self.config.step_budget:
            # the exact minimum needs the polar candidate, whose descent is one
            # step per unit of m; fail before paying for the other candidates
            raise BoundBudgetError(
                key, "polar descent over C_0 at this target dimension exceeds the step budget")
        cands = []
        if m == 0:
            if r == 1:
                cands.append((tsen_lang_base(S[0], i), RULE_TSEN, (), {"d": S[0], "i": i}))
            else:
                cands.append((lang_nagata_system_base(S, i), RULE_LANG_NAGATA, (), {"i": i}))
        if i == 0 and self.config.predonzan and all(x >= 2 for x in S):
            cands.append((predonzan_min_n(S, m), RULE_PREDONZAN, (), {}))
        if S[0] == 1:
            child = BoundKey("N", Multidegree(S[1:]), m, i)
            v = yield child
            if is_finite(v):
                cands.append((1 + v, RULE_STRIP, (child,), {}))
        if r >= 2:
            for s in range(1, r):
                inner = BoundKey("N", Multidegree(S[s:]), m, i)
                iv = yield inner
                if not is_finite(iv):
                    continue
                outer = BoundKey("N", Multidegree(S[:s]), iv, i)
                ov = yield outer
                if is_finite(ov):
                    cands.append((ov, RULE_SPLIT, (inner, outer), {"split_at": s}))
        if r == 1 and m >= 1:
            polar = yield from self._polar_candidate(key)
            if polar is not None:
                cands.append(polar)
        return self._pick(key, cands)

    def _polar_candidate(self, key: BoundKey):
        """The projection-from-a-point rule for a single degree d >= 2, m >= 1."""
        d, m, i = key.degrees[0], key.m, key.c_level
        base_key = BoundKey("N", key.degrees, 0, i)
        base = yield base_key
        if not is_finite(base):
            return None
        if i >= 1 and m > self.config.chain_threshold:
            accelerated = yield from self._accelerated_polar(key, base_key, base)
            if accelerated is not None:
                return accelerated
        if m > self.config.step_budget:
            raise BoundBudgetError(
                key, f"polar descent of ~2^{m.bit_length() - 1} steps exceeds the step budget")
        inner_key = BoundKey("N", Multidegree(range(1, d + 1)), m - 1, i)
        iv = yield inner_key
        if not is_finite(iv):
            return None
        value = max(base, 1 + iv)
        return (value, RULE_POLAR, (base_key, inner_key), {"ambient_drop": 1})

    # -- single-degree chain acceleration ------------------------------------

    def _accelerated_polar(self, key: BoundKey, base_key: BoundKey, base: int):
        """Exact closed form for the polar chain when its one-step map is affine.

        For a single degree over C_i (i >= 1) the only applicable rule above
        m = 0 is the polar projection, so F(m) = max(F(0), 1 + P(F(m-1)))
        where P is the value of the polar family as a function of F at the
        previous step.  When P is exactly affine (slope a, offset b) from some
        argument on, the recurrence F(m) = a F(m-1) + b + 1 is solved in
        closed form; a geometric jump is guarded by the bit budget.
        """
        d, m, i = key.degrees[0], key.m, key.c_level
        shape = yield from self._tail_shape(d, i)
        if shape is _NONAFFINE:
            return None
        if m <= _anchor_point(shape, base) + 1:
            # at or next to the anchor: take the literal path (no self-reference)
            return None
        anchor_m, anchor_val = yield from self._tail_anchor(d, i, shape, base)
        ratio, offset = shape.a, shape.b + 1
        steps = m - anchor_m
        if ratio == 1:
            value = anchor_val + offset * steps
        else:
            est = steps * max(ratio.bit_length() - 1, 1) + anchor_val.bit_length()
            if est > self.config.bit_budget:
                raise BoundBudgetError(key, "geometric chain exceeds the bit budget")
            p = ratio ** steps
            value = p * anchor_val + offset * (p - 1) // (ratio - 1)
        anchor_key = BoundKey("N", key.degrees, anchor_m, i)
        params = {
            "ambient_drop": 1,
            "accelerated": True,
            "ratio": ratio,
            "offset": offset,
            "steps": steps,
            "base": base,
        }
        assert value >= base
        return (value, RULE_POLAR, (anchor_key, base_key), params)

    def _tail_shape(self, d: int, i: int):
        """Symbolic one-step map of the polar chain for degree d over C_i.

        Returns an _Affine in the chain variable, or _NONAFFINE when some
        smaller-degree tail is itself non-affine in its argument (towers).
        """
        if (d, i) in self._tail_shapes:
            return self._tail_shapes[(d, i)]

        fns = {d: _Affine(1, 0, 0), 1: _Affine(1, 1, 0)}
        for dd in range(2, d):
            tail = yield from self._single_fn(dd, i)
            fns[dd] = tail

        def sym(S):
            if all(x == 1 for x in S):
                return _Affine(1, len(S), 0)
            if len(S) == 1:
                f = fns[S[0]]
                return f
            cands = []
            if S[0] == 1:
                inner = sym(S[1:])
                if inner is not _NONAFFINE:
                    cands.append(inner.plus(1))
                else:
                    cands.append(_NONAFFINE)
            for s in range(1, len(S)):
                outer, inner = sym(S[:s]), sym(S[s:])
                if outer is _NONAFFINE or inner is _NONAFFINE:
                    cands.append(_NONAFFINE)
                else:
                    cands.append(outer.after(inner))
            return _min_affine(cands)

        shape = sym(tuple(range(1, d + 1)))
        self._tail_shapes[(d, i)] = shape
        return shape

    def _single_fn(self, d: int, i: int):
        """F_d over C_i as an affine function of its target dimension, if it is one."""
        shape = yield from self._tail_shape(d, i)
        if shape is _NONAFFINE or shape.a != 1:
            # geometric or tower growth: not affine in the argument
            return _NONAFFINE
        base = yield BoundKey("N", Multidegree((d,)), 0, i)
        anchor_m, anchor_val = yield from self._tail_anchor(d, i, shape, base)
        slope = shape.b + 1
        return _Affine(slope, anchor_val - slope * anchor_m, anchor_m)

    def _tail_anchor(self, d: int, i: int, shape: _Affine, base: int):
        """First m from which the affine regime provably holds, with its value.

        Every bound value is at least its target dimension m, so F(t) >= t;
        t at or above both the symbolic validity threshold and the point where
        the chain branch reaches the m = 0 base keeps the recurrence exact
        from t on (both conditions persist by monotonicity).  The one-step
        relation is re-verified numerically at the anchor.
        """
        if (d, i) in self._tail_anchors:
            return self._tail_anchors[(d, i)]
        anchor_m = _anchor_point(shape, base)
        v0 = yield BoundKey("N", Multidegree((d,)), anchor_m, i)
        v1 = yield BoundKey("N", Multidegree((d,)), anchor_m + 1, i)
        if v1 != shape.a * v0 + shape.b + 1:
            raise AssertionError(
                f"chain shape mismatch for degree {d} over C_{i}: "
                f"F({anchor_m})={v0}, F({anchor_m + 1})={v1}, shape={shape}"
            )
        self._tail_anchors[(d, i)] = (anchor_m, v0)
        return anchor_m, v0

    # -- kind L --------------------------------------------------------------

    def _l_gen(self, key: BoundKey):
        S, m, i, mode = key.degrees, key.m, key.c_level, key.mode
        r = len(S)
        if r == 0:
            return BoundResult(key, m, RULE_EMPTY, ())
        if all(x == 1 for x in S):
            return BoundResult(key, m + r, RULE_ALL_LINEAR, ())
        cands = []
        if S[0] == 1:
            child = BoundKey("L", Multidegree(S[1:]), m, i, mode)
            v = yield child
            if is_finite(v):
                cands.append((1 + v, RULE_STRIP, (child,), {}))
        if self.config.roitman and m == 0 and i == 0:
            cands.append((sum(S), RULE_ROITMAN, (), {}))
        dec = degree_decrement(S)
        children = []
        l_star = 0
        finite = True
        for mp in range(m + 1):
            child_level = i if mode == UNIVERSAL else i + (m - mp)
            ck = BoundKey("L", dec, mp, child_level, mode)
            v = yield ck
            children.append(ck)
            if not is_finite(v):
                finite = False
                break
            l_star = max(l_star, v)
        if finite:
            nk = BoundKey("N", S, l_star, i)
            nv = yield nk
            if is_finite(nv):
                cands.append((nv, RULE_CHOW, tuple(children) + (nk,),
                              {"l_star": l_star, "decremented": tuple(dec)}))
        return self._pick(key, cands)

    # -- shared --------------------------------------------------------------

    def _pick(self, key: BoundKey, cands) -> BoundResult:
        best = None
        for value, rule, children, *rest in cands:
            params = rest[0] if rest else {}
            if best is None or value < best[0]:
                best = (value, rule, children, params)
        if best is None:
            return BoundResult(key, INFINITE, "infinite", ())
        value, rule, children, params = best
        assert value >= key.m, (key, value)
        return BoundResult(key, value, rule, children, params)

    def _candidate_makers(self, key: BoundKey):
        """Closures recomputing each applicable rule's value, for dominance checks."""
        S, m, i = key.degrees, key.m, key.c_level
        r = len(S)
        makers = []
        if key.kind == "N":
            if r == 0:
                return [(RULE_EMPTY, lambda: m)]
            if all(x == 1 for x in S):
                return [(RULE_ALL_LINEAR, lambda: m + r)]
            if m == 0:
                if r == 1:
                    makers.append((RULE_TSEN, lambda: tsen_lang_base(S[0], i)))
                else:
                    makers.append((RULE_LANG_NAGATA, lambda: lang_nagata_system_base(S, i)))
            if i == 0 and self.config.predonzan and all(x >= 2 for x in S):
                makers.append((RULE_PREDONZAN, lambda: predonzan_min_n(S, m)))
            if S[0] == 1:
                makers.append((RULE_STRIP, lambda: 1 + self._value("N", S[1:], m, i)))
            for s in range(1, r):
                makers.append((RULE_SPLIT, lambda s=s: self._value(
                    "N", S[:s], self._value("N", S[s:], m, i), i)))
            if r == 1 and m >= 1:
                makers.append((RULE_POLAR, lambda: max(
                    self._value("N", S, 0, i),
                    1 + self._value("N", tuple(range(1, S[0] + 1)), m - 1, i))))
        else:
            mode = key.mode
            if r == 0:
                return [(RULE_EMPTY, lambda: m)]
            if all(x == 1 for x in S):
                return [(RULE_ALL_LINEAR, lambda: m + r)]
            if S[0] == 1:
                makers.append((RULE_STRIP, lambda: 1 + self._lvalue(S[1:], m, i, mode)))
            if self.config.roitman and m == 0 and i == 0:
                makers.append((RULE_ROITMAN, lambda: sum(S)))

            def chow():
                dec = degree_decrement(S)
                l_star = 0
                for mp in range(m + 1):
                    level = i if mode == UNIVERSAL else i + (m - mp)
                    l_star = max(l_star, self._lvalue(dec, mp, level, mode))
                return self._value("N", S, l_star, i)

            makers.append((RULE_CHOW, chow))
        return makers

    def _value(self, kind, degrees, m, i):
        return self._run(BoundKey(kind, Multidegree(degrees), m, i)).value

    def _lvalue(self, degrees, m, i, mode):
        return self._run(BoundKey("L", Multidegree(degrees), m, i, mode)).value

    # -- persistent cache ----------------------------------------------------

    def _flags(self):
        return {"predonzan": self.config.predonzan, "roitman": self.config.roitman}

    def save_cache(self, path, max_bits: int = 4096):
        """Write the memo as a versioned JSON document (desk-scale entries only)."""
        entries = []
        for key, res in self._memo.items():
            if not is_finite(res.value):
                continue
            if key.m.bit_length() > max_bits or res.value.bit_length() > max_bits:
                continue
            entries.append({
                "key": _key_to_doc(key),
                "value": hex(res.value),
                "rule": res.rule,
                "children": [_key_to_doc(c) for c in res.children],
                "params": {k: (hex(v) if isinstance(v, int) and not isinstance(v, bool)
                               else v) for k, v in res.params.items()},
            })
        doc = {"version": CACHE_VERSION, "flags": self._flags(), "entries": entries}
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh)

    def load_cache(self, path) -> int:
        """Load a cache written by save_cache; ignored on version/flag mismatch.

        Returns the number of entries adopted.
        """
        try:
            with open(path, "r", encoding="utf-8") as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError):
            return 0
        if doc.get("version") != CACHE_VERSION or doc.get("flags") != self._flags():
            return 0
        count = 0
        for entry in doc.get("entries", []):
            try:
                key = _key_from_doc(entry["key"])
                children = tuple(_key_from_doc(c) for c in entry["children"])
                params = {k: (int(v, 16) if isinstance(v, str) and v.startswith(("0x", "-0x"))
                              else v) for k, v in entry["params"].items()}
                res = BoundResult(key, int(entry["value"], 16), entry["rule"], children, params)
            except (KeyError, ValueError, TypeError):
                continue
            self._memo.setdefault(key, res)
            count += 1
        return count


def _key_to_doc(key: BoundKey):
    return {"kind": key.kind, "degrees": list(key.degrees), "m": hex(key.m),
            "c": key.c_level, "mode": key.mode}


def _key_from_doc(doc):
    return BoundKey(doc["kind"], Multidegree(doc["degrees"]), int(doc["m"], 16),
                    doc["c"], doc["mode"])


def replay_trace(trace: dict, root: BoundKey):
    """Recompute the root value from the derivation steps alone.

    Walks the closure in dependency order and re-derives every step from its
    rule and children; the result must be bit-identical to the engine's.
    """
    order = []
    seen = set()
    stack = [(root, False)]
    while stack:
        key, expanded = stack.pop()
        if expanded:
            order.append(key)
            continue
        if key in seen:
            continue
        seen.add(key)
        stack.append((key, True))
        for child in trace[key].children:
            stack.append((child, False))
    values = {}
    for key in order:
        if key in values:
            continue
        res = trace[key]
        values[key] = _replay_step(res, values)
    return values[root]


def _replay_step(res: BoundResult, values):
    key = res.key
    S, m, i = key.degrees, key.m, key.c_level
    rule = res.rule
    if rule == RULE_EMPTY:
        out = m
    elif rule == RULE_ALL_LINEAR:
        out = m + len(S)
    elif rule == RULE_TSEN:
        out = tsen_lang_base(S[0], i)
    elif rule == RULE_LANG_NAGATA:
        out = lang_nagata_system_base(S, i)
    elif rule == RULE_PREDONZAN:
        out = predonzan_min_n(S, m)
    elif rule == RULE_ROITMAN:
        out = sum(S)
    elif rule == RULE_STRIP:
        out = 1 + values[res.children[0]]
    elif rule == RULE_SPLIT:
        inner, outer = res.children
        if outer.m != values[inner]:
            raise AssertionError("split derivation is inconsistent")
        out = values[outer]
    elif rule == RULE_POLAR:
        if res.params.get("accelerated"):
            anchor, base_key = res.children
            ratio, offset, steps = res.params["ratio"], res.params["offset"], res.params["steps"]
            a0 = values[anchor]
            if ratio == 1:
                out = a0 + offset * steps
            else:
                p = ratio ** steps
                out = p * a0 + offset * (p - 1) // (ratio - 1)
            if out < values[base_key]:
                raise AssertionError("accelerated chain fell below the base value")
        else:
            base_key, inner_key = res.children
            if res.params.get("ambient_drop") != 1:
                raise AssertionError("polar step missing its ambient drop")
            out = max(values[base_key], 1 + values[inner_key])
    elif rule == RULE_CHOW:
        *lchildren, nk = res.children
        l_star = max(values[c] for c in lchildren)
        if l_star != res.params["l_star"] or nk.m != l_star:
            raise AssertionError("subspace-dimension derivation is inconsistent")
        out = values[nk]
    else:
        raise AssertionError(f"unknown rule {rule!r}")
    if out != res.value:
        raise AssertionError(f"replay of {key} produced {out}, recorded {res.value}")
    return out
