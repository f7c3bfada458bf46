"""Compiled Monte Carlo kernels.

Frames are bit-packed: one x-mask and one z-mask per register (int64, bit i =
qubit i carries that component).  Faults are injected through a shared
countdown drawn from the geometric gap distribution, so an elementary
operation that does not fail costs a counter decrement rather than a float
draw.  Randomness is a splitmix64 stream per trial, derived from
(master seed, trial index); identical seeds replay identical histories.

The level-1 and level-2 encoding circuits share the same structure (the code
is concatenated with itself), so the circuit tables below serve both levels.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

from . import circuits, hamming

# ---------------------------------------------------------------------------
# Frozen tables (compile-time constants for the jitted functions).

SYN7 = hamming.SYN7
PAR7 = hamming.PAR7
COSET_W = hamming.COSET_W
COSET_REP = hamming.COSET_REP

_CT = circuits.build_tables()
PLUS_MASK = _CT["plus_mask"]
ENC_C = _CT["enc_c"]
ENC_T = _CT["enc_t"]
ENC_P = _CT["enc_p"]
ENC_NL = _CT["enc_nl"]
BOX_LAYER = _CT["box_layer"]
BOX_ZFIRST = _CT["box_zfirst"]
VSUP = _CT["vsup"]

# Schemes / bases / error types.
STEANE = 0
REJECT = 1
IDEAL = 2
PLUS = 0
ZERO = 1
TX = 0  # X-error syndrome (|+>_L ancilla)
TZ = 1  # Z-error syndrome (|0>_L ancilla)

# Tally row indices (one int64 row per trial / batch item).
R_ROUNDS = 0
R_CRASH = 1
R_CRASHX = 2
R_CRASHZ = 3
R_CRASHBOTH = 4
R_ABORT = 5
R_P7_ATT = 6
R_P7_REJ = 7
R_P49_ATT = 8
R_P49_REJ = 9
R_ANC = 10
R_TIME = 11
R_SYND = 12
R_ANCPHYS = 13
R_ANCLOG = 14
R_ROUNDS_ALL = 15
ROW_LEN = 16

_PHI = np.uint64(0x9E3779B97F4A7C15)
_MX1 = np.uint64(0xBF58476D1CE4E5B9)
_MX2 = np.uint64(0x94D049BB133111EB)
_S30 = np.uint64(30)
_S27 = np.uint64(27)
_S31 = np.uint64(31)
_S11 = np.uint64(11)
_U15 = np.uint64(15)
_INV53 = 1.0 / 9007199254740992.0
NO_FAULT = np.int64(1) << np.int64(62)


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> _S30)) * _MX1
    z = (z ^ (z >> _S27)) * _MX2
    return z ^ (z >> _S31)


@njit(cache=True, inline="always")
def next_u64(rs):
    rs[0] += _PHI
    return _mix(rs[0])


@njit(cache=True, inline="always")
def uniform(rs):
    # In (0, 1]; never 0 so log() is safe.
    return (np.float64(next_u64(rs) >> _S11) + 1.0) * _INV53


@njit(cache=True, inline="always")
def rand_below(rs, n):
    return np.int64(next_u64(rs) % np.uint64(n))


@njit(cache=True)
def seed_stream(master, index):
    rs = np.empty(1, dtype=np.uint64)
    rs[0] = _mix(np.uint64(master) ^ ((np.uint64(index) + np.uint64(1)) * _PHI))
    return rs


@njit(cache=True, inline="always")
def geom_gap(rs, gi):
    """Fault-free operations before the next fault.  gi = 1/log1p(-gamma);
    0.0 marks gamma == 0 (no faults ever)."""
    if gi == 0.0:
        return NO_FAULT
    g = np.log(uniform(rs)) * gi
    if g >= 4.0e18:
        return NO_FAULT
    return np.int64(g)


@njit(cache=True, inline="always")
def fault_bits(rs, cd, gi):
    """Advance the countdown by one operation; returns -1 (no fault) or four
    uniform bits (two per affected qubit)."""
    if cd[0] == 0:
        cd[0] = geom_gap(rs, gi)
        return np.int64(next_u64(rs) & _U15)
    cd[0] -= 1
    return np.int64(-1)


# ---------------------------------------------------------------------------
# Elementary operation batches.


@njit(cache=True)
def prep_batch(rs, cd, gi, n):
    """n fresh qubits; each preparation may depolarize its qubit."""
    x = np.int64(0)
    z = np.int64(0)
    k = 0
    while cd[0] < n - k:
        i = k + cd[0]
        fb = np.int64(next_u64(rs) & _U15)
        x ^= (fb & 1) << i
        z ^= ((fb >> 1) & 1) << i
        k = i + 1
        cd[0] = geom_gap(rs, gi)
    cd[0] -= n - k
    return x, z


@njit(cache=True)
def cnot_trans(rs, cd, gi, cx, cz, tx, tz, n):
    """n parallel CNOTs between corresponding qubits of two registers."""
    tx ^= cx
    cz ^= tz
    k = 0
    while cd[0] < n - k:
        i = k + cd[0]
        fb = np.int64(next_u64(rs) & _U15)
        cx ^= (fb & 1) << i
        cz ^= ((fb >> 1) & 1) << i
        tx ^= ((fb >> 2) & 1) << i
        tz ^= ((fb >> 3) & 1) << i
        k = i + 1
        cd[0] = geom_gap(rs, gi)
    cd[0] -= n - k
    return cx, cz, tx, tz


@njit(cache=True)
def measure_batch(rs, cd, gi, x, z, n, xbasis):
    """n destructive measurements; a failing measurement depolarizes its qubit
    first.  Returns the flip word (x components for Z basis, z for X)."""
    k = 0
    while cd[0] < n - k:
        i = k + cd[0]
        fb = np.int64(next_u64(rs) & _U15)
        x ^= (fb & 1) << i
        z ^= ((fb >> 1) & 1) << i
        k = i + 1
        cd[0] = geom_gap(rs, gi)
    cd[0] -= n - k
    if xbasis:
        return z
    return x


@njit(cache=True, inline="always")
def cnot_in_reg(rs, cd, gi, x, z, c, t):
    """One CNOT between bits c and t of a single register."""
    x ^= ((x >> c) & 1) << t
    z ^= ((z >> t) & 1) << c
    fb = fault_bits(rs, cd, gi)
    if fb >= 0:
        x ^= (fb & 1) << c
        z ^= ((fb >> 1) & 1) << c
        x ^= ((fb >> 2) & 1) << t
        z ^= ((fb >> 3) & 1) << t
    return x, z


@njit(cache=True)
def cnot_blocks(rs, cd, gi, x, z, a, b):
    """Transversal logical CNOT from block a to block b of a 49-qubit register."""
    sa = 7 * a
    sb = 7 * b
    ax = (x >> sa) & 127
    az = (z >> sa) & 127
    bx = (x >> sb) & 127
    bz = (z >> sb) & 127
    ax, az, bx, bz = cnot_trans(rs, cd, gi, ax, az, bx, bz, 7)
    keep = ~((np.int64(127) << sa) | (np.int64(127) << sb))
    x = (x & keep) | (ax << sa) | (bx << sb)
    z = (z & keep) | (az << sa) | (bz << sb)
    return x, z


@njit(cache=True, inline="always")
def popcount49(v):
    n = 0
    while v:
        v &= v - 1
        n += 1
    return n


# ---------------------------------------------------------------------------
# Ancilla preparation.


@njit(cache=True)
def prepare7(rs, cd, gi, basis, nchecks, budget, ct):
    """Verified 7-qubit encoded ancilla; retries until the verification
    passes.  Returns (ok, x, z, time_units)."""
    t_total = 0
    attempts = 0
    while attempts < budget:
        attempts += 1
        ct[R_P7_ATT] += 1
        t = 1
        x, z = prep_batch(rs, cd, gi, 7)
        nl = ENC_NL[basis]
        for li in range(nl):
            for g in range(ENC_P[basis, li], ENC_P[basis, li + 1]):
                x, z = cnot_in_reg(rs, cd, gi, x, z, ENC_C[basis, g], ENC_T[basis, g])
            t += 1
        ok = True
        for c in range(nchecks):
            sup = VSUP[c]
            vx, vz = prep_batch(rs, cd, gi, 1)
            t += 1
            for q in range(7):
                if (sup >> q) & 1:
                    if basis == PLUS:
                        # verification qubit is the control
                        x ^= (vx & 1) << q
                        vz ^= (z >> q) & 1
                    else:
                        vx ^= (x >> q) & 1
                        z ^= (vz & 1) << q
                    fb = fault_bits(rs, cd, gi)
                    if fb >= 0:
                        vx ^= fb & 1
                        vz ^= (fb >> 1) & 1
                        x ^= ((fb >> 2) & 1) << q
                        z ^= ((fb >> 3) & 1) << q
                    t += 1
            flip = measure_batch(rs, cd, gi, vx, vz, 1, basis == PLUS)
            t += 1
            if flip & 1:
                ok = False
                break
        t_total += t
        if ok:
            return 1, x, z, t_total
        ct[R_P7_REJ] += 1
    return 0, np.int64(0), np.int64(0), t_total


@njit(cache=True)
def extract7(rs, cd, gi, x, z, b, ty, nchecks, budget, ct):
    """Level-1 syndrome of one error type on block b of a 49-qubit register,
    via a verified 7-qubit ancilla.  Returns (syndrome or -1, x, z, time)."""
    ok, ax, az, t = prepare7(rs, cd, gi, PLUS if ty == TX else ZERO, nchecks, budget, ct)
    if ok == 0:
        return np.int64(-1), x, z, t
    s = 7 * b
    bx = (x >> s) & 127
    bz = (z >> s) & 127
    if ty == TX:
        bx, bz, ax, az = cnot_trans(rs, cd, gi, bx, bz, ax, az, 7)
        word = measure_batch(rs, cd, gi, ax, az, 7, False)
    else:
        ax, az, bx, bz = cnot_trans(rs, cd, gi, ax, az, bx, bz, 7)
        word = measure_batch(rs, cd, gi, ax, az, 7, True)
    t += 2
    keep = ~(np.int64(127) << s)
    x = (x & keep) | (bx << s)
    z = (z & keep) | (bz << s)
    return SYN7[word], x, z, t


@njit(cache=True)
def prepare49(rs, cd, gi, basis, scheme, nchecks, budget, ct):
    """49-qubit encoded ancilla.

    scheme STEANE: correction boxes at level 1 plus the logical verification.
    scheme REJECT: boxes become detection, any nonzero syndrome discards all
    49 qubits; no logical checks.
    Returns (ok, x, z, time_units)."""
    t_total = 0
    attempts = 0
    while attempts < budget:
        attempts += 1
        ct[R_P49_ATT] += 1
        t = 0
        x = np.int64(0)
        z = np.int64(0)
        exhausted = False
        for b in range(7):
            sub = PLUS if (PLUS_MASK[basis] >> b) & 1 else ZERO
            ok7, x7, z7, t7 = prepare7(rs, cd, gi, sub, nchecks, budget, ct)
            if ok7 == 0:
                exhausted = True
                break
            x |= x7 << (7 * b)
            z |= z7 << (7 * b)
            # cost model counts work, not parallel depth: discarded factory
            # attempts are the whole point of the overhead figure
            t += t7
        if exhausted:
            return 0, np.int64(0), np.int64(0), t_total
        rejected = False
        nl = ENC_NL[basis]
        for li in range(nl):
            for g in range(ENC_P[basis, li], ENC_P[basis, li + 1]):
                x, z = cnot_blocks(rs, cd, gi, x, z, ENC_C[basis, g], ENC_T[basis, g])
            t += 1
            for b in range(7):
                if BOX_LAYER[basis, b] != li:
                    continue
                for half in range(2):
                    # The check against the harmful error type of the
                    # prepared basis runs last, so the other check's ancilla
                    # backwash is still screened.
                    if basis == PLUS:
                        ty = TX if half == 0 else TZ
                    else:
                        ty = TZ if half == 0 else TX
                    syn, x, z, te = extract7(rs, cd, gi, x, z, b, ty, nchecks, budget, ct)
                    t += te
                    if syn < 0:
                        return 0, np.int64(0), np.int64(0), t_total
                    if syn != 0:
                        if scheme == STEANE:
                            if ty == TX:
                                x ^= np.int64(1) << (7 * b + syn - 1)
                            else:
                                z ^= np.int64(1) << (7 * b + syn - 1)
                        else:
                            rejected = True
                            break
                if rejected:
                    break
            if rejected:
                break
        if rejected:
            ct[R_P49_REJ] += 1
            t_total += t
            continue
        if scheme == STEANE:
            # Logical-level verification: the four checks of the prepared
            # basis, each measured with a fresh verified 7-qubit ancilla.
            vfail = False
            for c in range(4):
                sup = VSUP[c]
                ok7, ax, az, t7 = prepare7(rs, cd, gi, basis, nchecks, budget, ct)
                if ok7 == 0:
                    return 0, np.int64(0), np.int64(0), t_total
                t += t7
                for b in range(7):
                    if (sup >> b) & 1:
                        s = 7 * b
                        bx = (x >> s) & 127
                        bz = (z >> s) & 127
                        if basis == PLUS:
                            ax, az, bx, bz = cnot_trans(rs, cd, gi, ax, az, bx, bz, 7)
                        else:
                            bx, bz, ax, az = cnot_trans(rs, cd, gi, bx, bz, ax, az, 7)
                        keep = ~(np.int64(127) << s)
                        x = (x & keep) | (bx << s)
                        z = (z & keep) | (bz << s)
                        t += 1
                word = measure_batch(rs, cd, gi, ax, az, 7, basis == PLUS)
                t += 1
                # A stabilizer measurement accepts only codeword outcomes:
                # any nonzero syndrome or flipped logical means residual
                # harmful errors (or ancilla junk), so the attempt restarts.
                if SYN7[word] != 0 or PAR7[word] != 0:
                    vfail = True
                    break
            if vfail:
                ct[R_P49_REJ] += 1
                t_total += t
                continue
        t_total += t
        ct[R_ANC] += 1
        ct[R_TIME] += t_total
        return 1, x, z, t_total
    return 0, np.int64(0), np.int64(0), t_total


@njit(cache=True)
def prepare49_ideal(rs, cd, gi, budget, ct):
    """Idealized ancilla: one fault opportunity per qubit, then a noiseless
    per-block syndrome check of both types; any detection rejects all 49."""
    attempts = 0
    while attempts < budget:
        attempts += 1
        ct[R_P49_ATT] += 1
        x, z = prep_batch(rs, cd, gi, 49)
        ok = True
        for b in range(7):
            if SYN7[(x >> (7 * b)) & 127] != 0 or SYN7[(z >> (7 * b)) & 127] != 0:
                ok = False
                break
        if ok:
            ct[R_ANC] += 1
            ct[R_TIME] += attempts
            return 1, x, z, attempts
        ct[R_P49_REJ] += 1
    return 0, np.int64(0), np.int64(0), attempts


# ---------------------------------------------------------------------------
# Decoding.


@njit(cache=True)
def pack_syndrome49(word):
    """24-bit packed two-level syndrome of a 49-bit measurement word."""
    sy = np.int64(0)
    l = np.int64(0)
    for b in range(7):
        w = (word >> (7 * b)) & 127
        sy |= SYN7[w] << (3 * b)
        l |= PAR7[w] << b
    return sy | (SYN7[l] << 21)


@njit(cache=True)
def decode49_k(sy):
    """Exact minimum-weight correction for a packed syndrome.
    Returns (flip mask, logical class)."""
    outer = (sy >> 21) & 7
    best_b = np.int64(-1)
    best_cost = np.int64(99)
    best_cls = np.int64(2)
    for b in range(128):
        if SYN7[b] != outer:
            continue
        cost = np.int64(0)
        for i in range(7):
            cost += COSET_W[(sy >> (3 * i)) & 7, (b >> i) & 1]
        cls = PAR7[b]
        if cost < best_cost or (
            cost == best_cost
            and (cls < best_cls or (cls == best_cls and b < best_b))
        ):
            best_b = b
            best_cost = cost
            best_cls = cls
    mask = np.int64(0)
    for i in range(7):
        mask |= COSET_REP[(sy >> (3 * i)) & 7, (best_b >> i) & 1] << (7 * i)
    return mask, best_cls


LOGICAL_REP7 = np.int64(hamming.LOGICAL_REP7)


@njit(cache=True)
def hierarchical49_k(sy):
    """Level-by-level correction: one bit per block, then one block flip."""
    mask = np.int64(0)
    detected = np.int64(0)
    for i in range(7):
        s = (sy >> (3 * i)) & 7
        if s:
            mask |= np.int64(1) << (7 * i + s - 1)
            detected |= np.int64(1) << i
    outer = ((sy >> 21) & 7) ^ SYN7[detected]
    if outer:
        mask ^= LOGICAL_REP7 << (7 * (outer - 1))
    cls = np.int64(0)
    for i in range(7):
        cls ^= PAR7[(mask >> (7 * i)) & 127]
    return mask, cls


@njit(cache=True)
def crash_component_k(v):
    """1 iff perfect minimum-weight decoding of this component pattern lands
    in the wrong logical class."""
    sy = np.int64(0)
    l = np.int64(0)
    for b in range(7):
        w = (v >> (7 * b)) & 127
        sy |= SYN7[w] << (3 * b)
        l |= PAR7[w] << b
    sy |= SYN7[l] << 21
    _, cls = decode49_k(sy)
    return cls ^ PAR7[l]


# ---------------------------------------------------------------------------
# Error correction protocols on a 49-qubit data block.


@njit(cache=True)
def extract49(rs, cd, gi, dx, dz, ty, scheme, nchecks, budget, ct):
    """One transversal syndrome extraction.  Returns (ok, word, dx, dz) where
    word is the 49-bit transversal measurement record."""
    basis = PLUS if ty == TX else ZERO
    if scheme == IDEAL:
        ok, ax, az, _ = prepare49_ideal(rs, cd, gi, budget, ct)
    else:
        ok, ax, az, _ = prepare49(rs, cd, gi, basis, scheme, nchecks, budget, ct)
    if ok == 0:
        return 0, np.int64(0), dx, dz
    if ty == TX:
        dx, dz, ax, az = cnot_trans(rs, cd, gi, dx, dz, ax, az, 49)
        word = measure_batch(rs, cd, gi, ax, az, 49, False)
    else:
        ax, az, dx, dz = cnot_trans(rs, cd, gi, ax, az, dx, dz, 49)
        word = measure_batch(rs, cd, gi, ax, az, 49, True)
    ct[R_SYND] += 1
    return 1, word, dx, dz


@njit(cache=True)
def outer_syndrome_hier(word):
    """Outer syndrome of a measurement word after decoding each inner block
    (a detected inner error flips that block's logical value)."""
    l = np.int64(0)
    for b in range(7):
        w = (word >> (7 * b)) & 127
        v = PAR7[w]
        if SYN7[w] != 0:
            v ^= 1
        l |= v << b
    return SYN7[l]


@njit(cache=True)
def correct_single(rs, cd, gi, dx, dz, ty, scheme, nchecks, budget, ct):
    """Single-syndrome distance-9 correction; never corrects at the 7-bit
    level.  Returns (ok, dx, dz)."""
    ok, word, dx, dz = extract49(rs, cd, gi, dx, dz, ty, scheme, nchecks, budget, ct)
    if ok == 0:
        return 0, dx, dz
    sy = pack_syndrome49(word)
    if sy != 0:
        mask, _ = decode49_k(sy)
        if ty == TX:
            dx ^= mask
        else:
            dz ^= mask
    return 1, dx, dz


@njit(cache=True)
def syndrome_components(word):
    """Packed per-component syndrome of a measurement word: seven 3-bit inner
    syndromes plus the 3-bit outer syndrome of the inner-decoded logicals."""
    sy = np.int64(0)
    for b in range(7):
        sy |= SYN7[(word >> (7 * b)) & 127] << (3 * b)
    return sy | (outer_syndrome_hier(word) << 21)


@njit(cache=True)
def correct_steane(rs, cd, gi, dx, dz, ty, nchecks, budget, ct, pend, pendn):
    """Steane-baseline correction of one error type, level by level, in the
    low-memory-error variant that extracts one syndrome at a time.

    Level 1: each sub-block gets one syndrome read with a verified 7-qubit
    ancilla and an immediate single-bit correction.  Level 2: one transversal
    read with a verified 49-qubit ancilla yields the outer syndrome of the
    inner-decoded logicals; a nontrivial outer value is only acted on when it
    agrees with the value carried from the previous round (fresh ancilla junk
    does not repeat, real block-logical errors do), and the correction is a
    minimum-weight inner logical representative on the indicated block.
    Unresolved outer syndromes carry exactly one round."""
    for b in range(7):
        syn, dx, dz, _ = extract7(rs, cd, gi, dx, dz, b, ty, nchecks, budget, ct)
        if syn < 0:
            return 0, dx, dz
        if syn != 0:
            if ty == TX:
                dx ^= np.int64(1) << (7 * b + syn - 1)
            else:
                dz ^= np.int64(1) << (7 * b + syn - 1)
    agreed = np.int64(-1)
    carry1 = np.int64(-1)
    carry2 = np.int64(-1)
    carry3 = np.int64(-1)
    ok, word, dx, dz = extract49(rs, cd, gi, dx, dz, ty, STEANE, nchecks, budget, ct)
    if ok == 0:
        return 0, dx, dz
    sy1 = outer_syndrome_hier(word)
    if sy1 != 0:
        for k in range(pendn[ty]):
            if pend[ty, k] == sy1:
                agreed = sy1
        if agreed < 0:
            ok, word, dx, dz = extract49(
                rs, cd, gi, dx, dz, ty, STEANE, nchecks, budget, ct
            )
            if ok == 0:
                return 0, dx, dz
            sy2 = outer_syndrome_hier(word)
            if sy2 != 0:
                if sy2 == sy1:
                    agreed = sy2
                else:
                    for k in range(pendn[ty]):
                        if pend[ty, k] == sy2:
                            agreed = sy2
                    if agreed < 0:
                        ok, word, dx, dz = extract49(
                            rs, cd, gi, dx, dz, ty, STEANE, nchecks, budget, ct
                        )
                        if ok == 0:
                            return 0, dx, dz
                        sy3 = outer_syndrome_hier(word)
                        if sy3 != 0:
                            if sy3 == sy1 or sy3 == sy2:
                                agreed = sy3
                            else:
                                for k in range(pendn[ty]):
                                    if pend[ty, k] == sy3:
                                        agreed = sy3
                            if agreed < 0:
                                carry1 = sy1
                                carry2 = sy2
                                carry3 = sy3
                        else:
                            carry1 = sy1
                            carry2 = sy2
    if agreed > 0:
        mask = LOGICAL_REP7 << (7 * (agreed - 1))
        if ty == TX:
            dx ^= mask
        else:
            dz ^= mask
    n = 0
    if carry1 >= 0:
        pend[ty, n] = carry1
        n += 1
    if carry2 >= 0:
        pend[ty, n] = carry2
        n += 1
    if carry3 >= 0:
        pend[ty, n] = carry3
        n += 1
    pendn[ty] = n
    return 1, dx, dz


# ---------------------------------------------------------------------------
# Round structure and sweeps.


@njit(cache=True)
def run_trial(master, trial, gi, scheme, nchecks, rounds, burnin, pool_cap, budget, row):
    """One independent trial: `rounds` rounds of inter-block CNOT plus error
    correction, tallying crashes per post-burn-in round."""
    rs = seed_stream(master, trial)
    cd = np.empty(1, dtype=np.int64)
    cd[0] = geom_gap(rs, gi)
    cap = pool_cap if pool_cap < rounds else rounds
    if cap < 1:
        cap = 1
    pool_x = np.empty(cap, dtype=np.int64)
    pool_z = np.empty(cap, dtype=np.int64)
    pool_n = 0
    pool_w = 0
    pend = np.zeros((2, 3), dtype=np.int64)
    pendn = np.zeros(2, dtype=np.int64)
    dx = np.int64(0)
    dz = np.int64(0)
    control = (next_u64(rs) & np.uint64(1)) != 0
    for r in range(1, rounds + 1):
        if pool_n > 0:
            j = rand_below(rs, pool_n)
            px = pool_x[j]
            pz = pool_z[j]
        else:
            px = np.int64(0)
            pz = np.int64(0)
        if control:
            dx, dz, px, pz = cnot_trans(rs, cd, gi, dx, dz, px, pz, 49)
        else:
            px, pz, dx, dz = cnot_trans(rs, cd, gi, px, pz, dx, dz, 49)
        z_first = (next_u64(rs) & np.uint64(1)) != 0
        ok = 1
        for half in range(2):
            if z_first:
                ty = TZ if half == 0 else TX
            else:
                ty = TX if half == 0 else TZ
            if scheme == STEANE:
                ok, dx, dz = correct_steane(
                    rs, cd, gi, dx, dz, ty, nchecks, budget, row, pend, pendn
                )
            else:
                ok, dx, dz = correct_single(
                    rs, cd, gi, dx, dz, ty, scheme, nchecks, budget, row
                )
            if ok == 0:
                break
        if ok == 0:
            row[R_ABORT] += 1
            break
        control = z_first
        cx = crash_component_k(dx)
        cz = crash_component_k(dz)
        row[R_ROUNDS_ALL] += 1
        if r > burnin:
            row[R_ROUNDS] += 1
        if cx or cz:
            if r > burnin:
                row[R_CRASH] += 1
                row[R_CRASHX] += cx
                row[R_CRASHZ] += cz
                if cx and cz:
                    row[R_CRASHBOTH] += 1
            break
        if r > 3:
            pool_x[pool_w] = dx
            pool_z[pool_w] = dz
            pool_w = (pool_w + 1) % cap
            if pool_n < cap:
                pool_n += 1
    return 0


@njit(cache=True, parallel=True)
def sweep_kernel(master, gamma, scheme, nchecks, trials, rounds, burnin, pool_cap, budget):
    """Independent trials of run_trial; one tally row per trial so that the
    aggregate is independent of thread count."""
    gi = 0.0 if gamma <= 0.0 else 1.0 / np.log1p(-gamma)
    out = np.zeros((trials, ROW_LEN), dtype=np.int64)
    for t in prange(trials):
        run_trial(master, t, gi, scheme, nchecks, rounds, burnin, pool_cap, budget, out[t])
    return out


@njit(cache=True, parallel=True)
def ancilla_kernel(master, gamma, scheme, nchecks, basis, count, budget, start):
    """Deliver `count` 49-qubit ancillas (trial indices start..start+count),
    tallying preparation cost and the residual physical / block-logical error
    statistics.  `start` lets callers chunk large runs without changing any
    trial's stream."""
    gi = 0.0 if gamma <= 0.0 else 1.0 / np.log1p(-gamma)
    out = np.zeros((count, ROW_LEN), dtype=np.int64)
    for i in prange(count):
        rs = seed_stream(master, start + i)
        cd = np.empty(1, dtype=np.int64)
        cd[0] = geom_gap(rs, gi)
        if scheme == IDEAL:
            ok, x, z, _ = prepare49_ideal(rs, cd, gi, budget, out[i])
        else:
            ok, x, z, _ = prepare49(rs, cd, gi, basis, scheme, nchecks, budget, out[i])
        if ok == 0:
            out[i, R_ABORT] += 1
            continue
        harm = z if basis == PLUS else x
        out[i, R_ANCPHYS] += popcount49(harm)
        # logical error: at least one block carries class-1 content with zero
        # syndrome (a logical fault invisible to that block's own syndrome),
        # and the block-class pattern is not just an outer stabilizer
        l = np.int64(0)
        free = False
        for b in range(7):
            w = (harm >> (7 * b)) & 127
            if PAR7[w] ^ (1 if SYN7[w] != 0 else 0):
                l |= np.int64(1) << b
                if SYN7[w] == 0:
                    free = True
        if free and (SYN7[l] != 0 or PAR7[l] != 0):
            out[i, R_ANCLOG] += 1
    return out
