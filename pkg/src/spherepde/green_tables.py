"""Registry of tabulated closed-form Green functions for Delta* + a on S^n.

Rows are keyed by (n, L) with L the exact rational root of a = L(n+L-1):
table 1 holds the Poisson case (L = 0), table 2 positive integer L
(resonant), table 3 positive half-integer L, table 4 negative a.  Every
row was validated against the defining coefficient series to ~1e-10
before inclusion (see the cross-backend tests).

Notation inside the formulas: t = cos(theta) in [-1, 1), theta = arccos t
in (0, pi], lg = ln((1-t)/2), and

    srd(t) = (1+t)/sqrt(1-t) + sqrt(1-t)   (= 2/sqrt(1-t)),

the surd factor shared by all half-integer-L rows.  All rows are singular
at t = 1.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import acos, log, pi, sqrt

RESONANCE_RTOL = 1e-9

S2 = sqrt(2.0)


def _srd(t):
    return (1.0 + t) / sqrt(1.0 - t) + sqrt(1.0 - t)


@dataclass(frozen=True)
class TableRow:
    n: int
    L: Fraction
    a: Fraction
    table: int
    text: str
    fn: callable

    def eval(self, t):
        t = float(t)
        return self.fn(t, acos(max(-1.0, min(1.0, t))))


_ROWS = []


def _row(n, L, table, text, fn):
    L = Fraction(L)
    a = L * (n + L - 1)
    _ROWS.append(TableRow(n=n, L=L, a=a, table=table, text=text, fn=fn))


# ---------------------------------------------------------------------------
# table 1: Poisson equation (a = 0)
# ---------------------------------------------------------------------------

_row(2, 0, 1, "1 + lg",
     lambda t, th: 1.0 + log((1.0 - t) / 2.0))
_row(3, 0, 1, "-(pi-th)*t/(2*sqrt(1-t^2)) + 1/4",
     lambda t, th: -(pi - th) * t / (2.0 * sqrt(1.0 - t * t)) + 0.25)
_row(4, 0, 1, "(4-7t)/(9(1-t)) + lg/3",
     lambda t, th: (4.0 - 7.0 * t) / (9.0 * (1.0 - t)) + log((1.0 - t) / 2.0) / 3.0)
_row(5, 0, 1, "(3-5t^2)/(16(1-t^2)) - (pi-th)*t(3-2t^2)/(8(1-t^2)^{3/2})",
     lambda t, th: (3.0 - 5.0 * t * t) / (16.0 * (1.0 - t * t))
     - (pi - th) * t * (3.0 - 2.0 * t * t) / (8.0 * (1.0 - t * t) ** 1.5))
_row(6, 0, 1, "(23-71t+43t^2)/(75(1-t)^2) + lg/5",
     lambda t, th: (23.0 - 71.0 * t + 43.0 * t * t) / (75.0 * (1.0 - t) ** 2)
     + log((1.0 - t) / 2.0) / 5.0)
_row(7, 0, 1, "(22-71t^2+40t^4)/(144(1-t^2)^2) + (pi-th)*t(-15+20t^2-8t^4)/(48(1-t^2)^{5/2})",
     lambda t, th: (22.0 - 71.0 * t**2 + 40.0 * t**4) / (144.0 * (1.0 - t * t) ** 2)
     + (pi - th) * t * (-15.0 + 20.0 * t**2 - 8.0 * t**4) / (48.0 * (1.0 - t * t) ** 2.5))
_row(8, 0, 1, "(176-759t+906t^2-337t^3)/(735(1-t)^3) + lg/7",
     lambda t, th: (176.0 - 759.0 * t + 906.0 * t**2 - 337.0 * t**3)
     / (735.0 * (1.0 - t) ** 3) + log((1.0 - t) / 2.0) / 7.0)
_row(9, 0, 1, "(50-237t^2+266t^4-94t^6)/(384(1-t^2)^3)"
     " + (pi-th)*t(-35+70t^2-56t^4+16t^6)/(128(1-t^2)^{7/2})",
     lambda t, th: (50.0 - 237.0 * t**2 + 266.0 * t**4 - 94.0 * t**6)
     / (384.0 * (1.0 - t * t) ** 3)
     + (pi - th) * t * (-35.0 + 70.0 * t**2 - 56.0 * t**4 + 16.0 * t**6)
     / (128.0 * (1.0 - t * t) ** 3.5))
_row(10, 0, 1, "(563-3089t+5466t^2-4049t^3+1091t^4)/(2835(1-t)^4) + lg/9",
     lambda t, th: (563.0 - 3089.0 * t + 5466.0 * t**2 - 4049.0 * t**3 + 1091.0 * t**4)
     / (2835.0 * (1.0 - t) ** 4) + log((1.0 - t) / 2.0) / 9.0)


# ---------------------------------------------------------------------------
# table 2: positive integer L (resonant Helmholtz)
# ---------------------------------------------------------------------------

_row(2, 1, 2, "1 + 4t/3 + t*lg",
     lambda t, th: 1.0 + 4.0 * t / 3.0 + t * log((1.0 - t) / 2.0))
_row(2, 2, 2, "(-7+30t+41t^2)/20 - (1-3t^2)/2*lg",
     lambda t, th: (-7.0 + 30.0 * t + 41.0 * t * t) / 20.0
     - (1.0 - 3.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(2, 3, 2, "(-56-123t+210t^2+289t^3)/84 - t(3-5t^2)/2*lg",
     lambda t, th: (-56.0 - 123.0 * t + 210.0 * t**2 + 289.0 * t**3) / 84.0
     - t * (3.0 - 5.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(2, 4, 2, "(75-660t-1182t^2+1260t^3+1739t^4)/288 + (3-30t^2+35t^4)/8*lg",
     lambda t, th: (75.0 - 660.0 * t - 1182.0 * t**2 + 1260.0 * t**3 + 1739.0 * t**4)
     / 288.0 + (3.0 - 30.0 * t**2 + 35.0 * t**4) / 8.0 * log((1.0 - t) / 2.0))

_row(3, 1, 2, "(pi-th)(1-2t^2)/(2*sqrt(1-t^2)) + t/4",
     lambda t, th: (pi - th) * (1.0 - 2.0 * t * t) / (2.0 * sqrt(1.0 - t * t)) + t / 4.0)
_row(3, 2, 2, "(pi-th)*t(3-4t^2)/(2*sqrt(1-t^2)) - (1-4t^2)/12",
     lambda t, th: (pi - th) * t * (3.0 - 4.0 * t * t) / (2.0 * sqrt(1.0 - t * t))
     - (1.0 - 4.0 * t * t) / 12.0)
_row(3, 3, 2, "(pi-th)(-1+8t^2-8t^4)/(2*sqrt(1-t^2)) - t(1-2t^2)/4",
     lambda t, th: (pi - th) * (-1.0 + 8.0 * t**2 - 8.0 * t**4)
     / (2.0 * sqrt(1.0 - t * t)) - t * (1.0 - 2.0 * t * t) / 4.0)
_row(3, 4, 2, "(pi-th)*t(-5+20t^2-16t^4)/(2*sqrt(1-t^2)) + (1-12t^2+16t^4)/20",
     lambda t, th: (pi - th) * t * (-5.0 + 20.0 * t**2 - 16.0 * t**4)
     / (2.0 * sqrt(1.0 - t * t)) + (1.0 - 12.0 * t**2 + 16.0 * t**4) / 20.0)

_row(4, 1, 2, "(10+13t-28t^2)/(15(1-t)) + t*lg",
     lambda t, th: (10.0 + 13.0 * t - 28.0 * t * t) / (15.0 * (1.0 - t))
     + t * log((1.0 - t) / 2.0))
_row(4, 2, 2, "(-41+223t+149t^2-359t^3)/(84(1-t)) - (1-5t^2)/2*lg",
     lambda t, th: (-41.0 + 223.0 * t + 149.0 * t**2 - 359.0 * t**3) / (84.0 * (1.0 - t))
     - (1.0 - 5.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(4, 3, 2, "(-96-213t+903t^2+397t^3-1027t^4)/(108(1-t)) - 5t(3-7t^2)/6*lg",
     lambda t, th: (-96.0 - 213.0 * t + 903.0 * t**2 + 397.0 * t**3 - 1027.0 * t**4)
     / (108.0 * (1.0 - t)) - 5.0 * t * (3.0 - 7.0 * t * t) / 6.0 * log((1.0 - t) / 2.0))
_row(4, 4, 2, "(577-5549t-6406t^2+24886t^3+8069t^4-21929t^5)/(1056(1-t))"
     " + 5(1-14t^2+21t^4)/8*lg",
     lambda t, th: (577.0 - 5549.0 * t - 6406.0 * t**2 + 24886.0 * t**3
                    + 8069.0 * t**4 - 21929.0 * t**5) / (1056.0 * (1.0 - t))
     + 5.0 * (1.0 - 14.0 * t**2 + 21.0 * t**4) / 8.0 * log((1.0 - t) / 2.0))

_row(5, 1, 2, "(pi-th)(3-12t^2+8t^4)/(8(1-t^2)^{3/2}) + t(13-16t^2)/(24(1-t^2))",
     lambda t, th: (pi - th) * (3.0 - 12.0 * t**2 + 8.0 * t**4)
     / (8.0 * (1.0 - t * t) ** 1.5) + t * (13.0 - 16.0 * t * t) / (24.0 * (1.0 - t * t)))
_row(5, 2, 2, "(pi-th)*t(15-40t^2+24t^4)/(8(1-t^2)^{3/2}) - (3-23t^2+22t^4)/(16(1-t^2))",
     lambda t, th: (pi - th) * t * (15.0 - 40.0 * t**2 + 24.0 * t**4)
     / (8.0 * (1.0 - t * t) ** 1.5)
     - (3.0 - 23.0 * t**2 + 22.0 * t**4) / (16.0 * (1.0 - t * t)))
_row(5, 3, 2, "(pi-th)(-5+60t^2-120t^4+64t^6)/(8(1-t^2)^{3/2})"
     " - t(37-144t^2+112t^4)/(40(1-t^2))",
     lambda t, th: (pi - th) * (-5.0 + 60.0 * t**2 - 120.0 * t**4 + 64.0 * t**6)
     / (8.0 * (1.0 - t * t) ** 1.5)
     - t * (37.0 - 144.0 * t**2 + 112.0 * t**4) / (40.0 * (1.0 - t * t)))
_row(5, 4, 2, "(pi-th)*t(-35+210t^2-336t^4+160t^6)/(8(1-t^2)^{3/2})"
     " + (9-159t^2+416t^4-272t^6)/(48(1-t^2))",
     lambda t, th: (pi - th) * t * (-35.0 + 210.0 * t**2 - 336.0 * t**4 + 160.0 * t**6)
     / (8.0 * (1.0 - t * t) ** 1.5)
     + (9.0 - 159.0 * t**2 + 416.0 * t**4 - 272.0 * t**6) / (48.0 * (1.0 - t * t)))

_row(6, 1, 2, "(56+64t-359t^2+232t^3)/(105(1-t)^2) + t*lg",
     lambda t, th: (56.0 + 64.0 * t - 359.0 * t**2 + 232.0 * t**3)
     / (105.0 * (1.0 - t) ** 2) + t * log((1.0 - t) / 2.0))
_row(6, 2, 2, "(-103+692t+6t^2-1844t^3+1237t^4)/(180(1-t)^2) - (1-7t^2)/2*lg",
     lambda t, th: (-103.0 + 692.0 * t + 6.0 * t**2 - 1844.0 * t**3 + 1237.0 * t**4)
     / (180.0 * (1.0 - t) ** 2)
     - (1.0 - 7.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(6, 3, 2, "(-704-1519t+11288t^2-3342t^3-18464t^4+12697t^5)/(660(1-t)^2)"
     " - 7t(1-3t^2)/2*lg",
     lambda t, th: (-704.0 - 1519.0 * t + 11288.0 * t**2 - 3342.0 * t**3
                    - 18464.0 * t**4 + 12697.0 * t**5) / (660.0 * (1.0 - t) ** 2)
     - 7.0 * t * (1.0 - 3.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(6, 4, 2, "(5477-58742t-30293t^2+384684t^3-166405t^4-450454t^5+315317t^6)"
     "/(6240(1-t)^2) + 7(1-18t^2+33t^4)/8*lg",
     lambda t, th: (5477.0 - 58742.0 * t - 30293.0 * t**2 + 384684.0 * t**3
                    - 166405.0 * t**4 - 450454.0 * t**5 + 315317.0 * t**6)
     / (6240.0 * (1.0 - t) ** 2)
     + 7.0 * (1.0 - 18.0 * t**2 + 33.0 * t**4) / 8.0 * log((1.0 - t) / 2.0))

_row(7, 1, 2, "(pi-th)(5-30t^2+40t^4-16t^6)/(16(1-t^2)^{5/2})"
     " + t(35-84t^2+46t^4)/(48(1-t^2)^2)",
     lambda t, th: (pi - th) * (5.0 - 30.0 * t**2 + 40.0 * t**4 - 16.0 * t**6)
     / (16.0 * (1.0 - t * t) ** 2.5)
     + t * (35.0 - 84.0 * t**2 + 46.0 * t**4) / (48.0 * (1.0 - t * t) ** 2))
_row(7, 2, 2, "(pi-th)*t(35-140t^2+168t^4-64t^6)/(16(1-t^2)^{5/2})"
     " - (62-695t^2+1304t^4-656t^6)/(240(1-t^2)^2)",
     lambda t, th: (pi - th) * t * (35.0 - 140.0 * t**2 + 168.0 * t**4 - 64.0 * t**6)
     / (16.0 * (1.0 - t * t) ** 2.5)
     - (62.0 - 695.0 * t**2 + 1304.0 * t**4 - 656.0 * t**6)
     / (240.0 * (1.0 - t * t) ** 2))
_row(7, 3, 2, "(pi-th)(-35+560t^2-1680t^4+1792t^6-640t^8)/(48(1-t^2)^{5/2})"
     " - t(255-1462t^2+2240t^4-1024t^6)/(144(1-t^2)^2)",
     lambda t, th: (pi - th) * (-35.0 + 560.0 * t**2 - 1680.0 * t**4 + 1792.0 * t**6
                                - 640.0 * t**8) / (48.0 * (1.0 - t * t) ** 2.5)
     - t * (255.0 - 1462.0 * t**2 + 2240.0 * t**4 - 1024.0 * t**6)
     / (144.0 * (1.0 - t * t) ** 2))
_row(7, 4, 2, "(pi-th)*t(-105+840t^2-2016t^4+1920t^6-640t^8)/(16(1-t^2)^{5/2})"
     " + (122-2831t^2+10960t^4-14160t^6+5888t^8)/(336(1-t^2)^2)",
     lambda t, th: (pi - th) * t * (-105.0 + 840.0 * t**2 - 2016.0 * t**4
                                    + 1920.0 * t**6 - 640.0 * t**8)
     / (16.0 * (1.0 - t * t) ** 2.5)
     + (122.0 - 2831.0 * t**2 + 10960.0 * t**4 - 14160.0 * t**6 + 5888.0 * t**8)
     / (336.0 * (1.0 - t * t) ** 2))

_row(8, 1, 2, "(144+131t-1518t^2+2013t^3-776t^4)/(315(1-t)^3) + t*lg",
     lambda t, th: (144.0 + 131.0 * t - 1518.0 * t**2 + 2013.0 * t**3 - 776.0 * t**4)
     / (315.0 * (1.0 - t) ** 3) + t * log((1.0 - t) / 2.0))
_row(8, 2, 2, "(-2927+23367t-14646t^2-75134t^3+114273t^4-45021t^5)/(4620(1-t)^3)"
     " - (1-9t^2)/2*lg",
     lambda t, th: (-2927.0 + 23367.0 * t - 14646.0 * t**2 - 75134.0 * t**3
                    + 114273.0 * t**4 - 45021.0 * t**5) / (4620.0 * (1.0 - t) ** 3)
     - (1.0 - 9.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(8, 3, 2, "(-6656-13551t+155859t^2-155858t^3-250170t^4+450453t^5-180181t^6)"
     "/(5460(1-t)^3) - 3t(3-11t^2)/2*lg",
     lambda t, th: (-6656.0 - 13551.0 * t + 155859.0 * t**2 - 155858.0 * t**3
                    - 250170.0 * t**4 + 450453.0 * t**5 - 180181.0 * t**6)
     / (5460.0 * (1.0 - t) ** 3)
     - 3.0 * t * (3.0 - 11.0 * t * t) / 2.0 * log((1.0 - t) / 2.0))
_row(8, 4, 2, "(4173-49699t+5793t^2+402945t^3-485545t^4-379929t^5+843387t^6"
     "-341189t^7)/(3360(1-t)^3) + 3(3-66t^2+143t^4)/8*lg",
     lambda t, th: (4173.0 - 49699.0 * t + 5793.0 * t**2 + 402945.0 * t**3
                    - 485545.0 * t**4 - 379929.0 * t**5 + 843387.0 * t**6
                    - 341189.0 * t**7) / (3360.0 * (1.0 - t) ** 3)
     + 3.0 * (3.0 - 66.0 * t**2 + 143.0 * t**4) / 8.0 * log((1.0 - t) / 2.0))


# ---------------------------------------------------------------------------
# table 3: positive half-integer L
# ---------------------------------------------------------------------------

_row(3, Fraction(1, 2), 3, "(1-2t)/(4*sqrt2)*srd*pi",
     lambda t, th: (1.0 - 2.0 * t) / (4.0 * S2) * _srd(t) * pi)
_row(3, Fraction(3, 2), 3, "(1+2t-4t^2)/(4*sqrt2)*srd*pi",
     lambda t, th: (1.0 + 2.0 * t - 4.0 * t * t) / (4.0 * S2) * _srd(t) * pi)
_row(3, Fraction(5, 2), 3, "(-1+4t+4t^2-8t^3)/(4*sqrt2)*srd*pi",
     lambda t, th: (-1.0 + 4.0 * t + 4.0 * t**2 - 8.0 * t**3) / (4.0 * S2) * _srd(t) * pi)
_row(3, Fraction(7, 2), 3, "(-1-4t+12t^2+8t^3-16t^4)/(4*sqrt2)*srd*pi",
     lambda t, th: (-1.0 - 4.0 * t + 12.0 * t**2 + 8.0 * t**3 - 16.0 * t**4)
     / (4.0 * S2) * _srd(t) * pi)

_row(5, Fraction(1, 2), 3, "(-5+18t-12t^2)/(32*sqrt2*(-1+t))*srd*pi",
     lambda t, th: (-5.0 + 18.0 * t - 12.0 * t * t) / (32.0 * S2 * (-1.0 + t))
     * _srd(t) * pi)
_row(5, Fraction(3, 2), 3, "(-7-12t+60t^2-40t^3)/(32*sqrt2*(-1+t))*srd*pi",
     lambda t, th: (-7.0 - 12.0 * t + 60.0 * t**2 - 40.0 * t**3)
     / (32.0 * S2 * (-1.0 + t)) * _srd(t) * pi)
_row(5, Fraction(5, 2), 3, "(9-52t-12t^2+168t^3-112t^4)/(32*sqrt2*(-1+t))*srd*pi",
     lambda t, th: (9.0 - 52.0 * t - 12.0 * t**2 + 168.0 * t**3 - 112.0 * t**4)
     / (32.0 * S2 * (-1.0 + t)) * _srd(t) * pi)
_row(5, Fraction(7, 2), 3, "(11+42t-228t^2+32t^3+432t^4-288t^5)/(32*sqrt2*(-1+t))*srd*pi",
     lambda t, th: (11.0 + 42.0 * t - 228.0 * t**2 + 32.0 * t**3 + 432.0 * t**4
                    - 288.0 * t**5) / (32.0 * S2 * (-1.0 + t)) * _srd(t) * pi)

_row(7, Fraction(1, 2), 3, "(15-76t+100t^2-40t^3)/(128*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: (15.0 - 76.0 * t + 100.0 * t**2 - 40.0 * t**3)
     / (128.0 * S2 * (1.0 - t) ** 2) * _srd(t) * pi)
_row(7, Fraction(3, 2), 3, "(77+100t-1020t^2+1400t^3-560t^4)/(384*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: (77.0 + 100.0 * t - 1020.0 * t**2 + 1400.0 * t**3 - 560.0 * t**4)
     / (384.0 * S2 * (1.0 - t) ** 2) * _srd(t) * pi)
_row(7, Fraction(5, 2), 3, "(-39+290t-140t^2-1120t^3+1680t^4-672t^5)"
     "/(128*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: (-39.0 + 290.0 * t - 140.0 * t**2 - 1120.0 * t**3 + 1680.0 * t**4
                    - 672.0 * t**5) / (128.0 * S2 * (1.0 - t) ** 2) * _srd(t) * pi)
_row(7, Fraction(7, 2), 3, "(-55-194t+1640t^2-1440t^3-3120t^4+5280t^5-2112t^6)"
     "/(128*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: (-55.0 - 194.0 * t + 1640.0 * t**2 - 1440.0 * t**3 - 3120.0 * t**4
                    + 5280.0 * t**5 - 2112.0 * t**6)
     / (128.0 * S2 * (1.0 - t) ** 2) * _srd(t) * pi)


# ---------------------------------------------------------------------------
# table 4: negative a
# ---------------------------------------------------------------------------

_row(3, Fraction(-1, 2), 4, "-1/(4*sqrt2)*srd*pi",
     lambda t, th: -1.0 / (4.0 * S2) * _srd(t) * pi)
_row(4, -1, 4, "-1/(3-3t)",
     lambda t, th: -1.0 / (3.0 - 3.0 * t))
_row(5, Fraction(-1, 2), 4, "(-3+2t)/(32*sqrt2*(1-t))*srd*pi",
     lambda t, th: (-3.0 + 2.0 * t) / (32.0 * S2 * (1.0 - t)) * _srd(t) * pi)
_row(5, -1, 4, "-t/(8(1-t^2)) - (pi-th)/(8(1-t^2)^{3/2})",
     lambda t, th: -t / (8.0 * (1.0 - t * t))
     - (pi - th) / (8.0 * (1.0 - t * t) ** 1.5))
_row(5, Fraction(-3, 2), 4, "-1/(32*sqrt2*(1-t))*srd*pi",
     lambda t, th: -1.0 / (32.0 * S2 * (1.0 - t)) * _srd(t) * pi)
_row(5, -2, 4, "-1/(8(1-t^2)) - t(pi-th)/(8(1-t^2)^{3/2})",
     lambda t, th: -1.0 / (8.0 * (1.0 - t * t))
     - t * (pi - th) / (8.0 * (1.0 - t * t) ** 1.5))
_row(6, -1, 4, "(-2+t)/(15(1-t)^2)",
     lambda t, th: (-2.0 + t) / (15.0 * (1.0 - t) ** 2))
_row(6, -2, 4, "-1/(15(1-t)^2)",
     lambda t, th: -1.0 / (15.0 * (1.0 - t) ** 2))
_row(7, Fraction(-1, 2), 4, "(-7+10t-4t^2)/(128*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: (-7.0 + 10.0 * t - 4.0 * t * t) / (128.0 * S2 * (1.0 - t) ** 2)
     * _srd(t) * pi)
_row(7, -1, 4, "(-5t+7t^3-2t^5)/(48(1-t^2)^3) - (pi-th)/(16(1-t^2)^{5/2})",
     lambda t, th: (-5.0 * t + 7.0 * t**3 - 2.0 * t**5) / (48.0 * (1.0 - t * t) ** 3)
     - (pi - th) / (16.0 * (1.0 - t * t) ** 2.5))
_row(7, Fraction(-3, 2), 4, "(-5+2t)/(384*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: (-5.0 + 2.0 * t) / (384.0 * S2 * (1.0 - t) ** 2) * _srd(t) * pi)
_row(7, -2, 4, "(-2+t^2+t^4)/(48(1-t^2)^3) - t(pi-th)/(16(1-t^2)^{5/2})",
     lambda t, th: (-2.0 + t**2 + t**4) / (48.0 * (1.0 - t * t) ** 3)
     - t * (pi - th) / (16.0 * (1.0 - t * t) ** 2.5))
_row(7, Fraction(-5, 2), 4, "-1/(128*sqrt2*(1-t)^2)*srd*pi",
     lambda t, th: -1.0 / (128.0 * S2 * (1.0 - t) ** 2) * _srd(t) * pi)
_row(7, -3, 4, "-t/(16(1-t^2)^2) - (1+2t^2)(pi-th)/(48(1-t^2)^{5/2})",
     lambda t, th: -t / (16.0 * (1.0 - t * t) ** 2)
     - (1.0 + 2.0 * t * t) * (pi - th) / (48.0 * (1.0 - t * t) ** 2.5))
_row(8, -1, 4, "(-8+9t-3t^2)/(105(1-t)^3)",
     lambda t, th: (-8.0 + 9.0 * t - 3.0 * t * t) / (105.0 * (1.0 - t) ** 3))
_row(8, -2, 4, "(-3+t)/(105(1-t)^3)",
     lambda t, th: (-3.0 + t) / (105.0 * (1.0 - t) ** 3))
_row(8, -3, 4, "-2/(105(1-t)^3)",
     lambda t, th: -2.0 / (105.0 * (1.0 - t) ** 3))


REGISTRY = {(row.n, row.L): row for row in _ROWS}


def rows_for(n=None, table=None):
    """All registry rows, optionally filtered by dimension and/or table."""
    out = [r for r in _ROWS
           if (n is None or r.n == n) and (table is None or r.table == table)]
    return list(out)


def lookup(n, a):
    """Row for (n, a), matching a against the exact rational within tolerance."""
    for row in _ROWS:
        if row.n == n and abs(a - float(row.a)) <= RESONANCE_RTOL * (1.0 + abs(a)):
            return row
    return None


def lookup_by_root(n, L):
    """Row keyed by the exact rational root L."""
    return REGISTRY.get((n, Fraction(L)))
