"""Double-precision midpoint-radius evaluation of lifted words (reference implementation).

Each letter is described by eight doubles:
    A_mid, A_rad   argument of alpha on a fixed branch (radians)
    bR, bI, b_rad  beta/alpha and a bound on the error of each component
    a2_lo          lower bound for |alpha|^2
    rmax           upper bound for |beta/alpha|
    shift          integer lift shift
The lifted map is t -> t + (A + atan(Im w / Re w))/pi + shift with
w = 1 + (beta/alpha) exp(-2 pi i t), and its derivative is 1/(|alpha|^2 |w|^2).
Rounding errors are bounded assuming correctly rounded arithmetic and
libm sin/cos/atan within one ulp.
"""
from math import atan, cos, inf, sin

TWO_PI = 6.283185307179586
INV_PI = 0.3183098861837907
NPAR = 8


def eval_letters(params, letters, mid, rad):
    """Apply ``letters`` (first element first) to the ball mid +- rad.

    Returns (mid, rad); rad is inf when the enclosure could not be certified.
    """
    for l in letters:
        b = NPAR * l
        a_m = params[b]
        a_r = params[b + 1]
        br = params[b + 2]
        bi = params[b + 3]
        b_r = params[b + 4]
        a2_lo = params[b + 5]
        rmax = params[b + 6]
        shift = params[b + 7]

        phi = TWO_PI * mid
        ec = abs(mid) * 2.5e-16 + abs(phi) * 2.3e-16 + 2.3e-16
        c = cos(phi)
        s = sin(phi)
        wr = 1.0 + (br * c + bi * s)
        wi = bi * c - br * s
        sb = abs(br) + abs(bi)
        ew = sb * ec + 2.0 * b_r + 4.5e-16 * (1.0 + sb)
        den = wr - ew
        if not den > 0.0:
            return mid, inf
        at = atan(wi / wr)
        e_arg = 1.5 * ew / den + 6e-16
        tot = a_m + at
        disp = tot * INV_PI
        e_disp = (a_r + e_arg + 2.3e-16 * abs(tot)) * 0.3184 + 2.3e-16 * abs(disp)
        t1 = mid + disp
        out = t1 + shift
        err = e_disp + 2.3e-16 * (abs(t1) + abs(out))
        if rad > 0.0:
            wmin = den - rmax * TWO_PI * rad * 1.0000001
            if not wmin > 0.0:
                return mid, inf
            lip = 1.000001 / (a2_lo * wmin * wmin)
            rad = (err + rad * lip) * 1.000001 + 1e-300
        else:
            rad = err * 1.000001 + 1e-300
        mid = out
    return mid, rad


def eval_many(params, words, mid, rad):
    return [eval_letters(params, w, mid, rad) for w in words]
