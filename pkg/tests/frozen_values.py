"""Constants frozen from a 50-digit mpmath pass.

Generated by scripts/freeze_constants.py; do not edit by hand.
"""

from fractions import Fraction

LAMBDA0_05 = Fraction(-53, 96)  # exact rational
B_05 = Fraction(-73, 53)  # exact rational
C_05 = Fraction(-24, 53)  # exact rational

# phi(0.5, 0) = (1 - r^2)^(-3/2)
PHI_R05_S0 = 1.539600717839002  # 1.53960071783900203869106341467
# closed-form sigma_HT(0.5); integral agrees to 1e-30
SIGMA_HT_05 = 3.399951585227796  # 3.39995158522779616877609837407
# closed-form sigma_HT(0.9)
SIGMA_HT_09 = 577.9669345847169  # 577.966934584716940465934262769
# f at x=(0.5,0), dx=(0,0.5)
F_CIRCLE_05 = 0.24056261216234406  # 0.240562612162344068545478658542
# g at x=(0.5,0), dx=(0,0.5) = a / (1 - a^2)^(3/2)
G_CIRCLE_05 = 0.769800358919501  # 0.769800358919501019345531707336
# 2 pi g(c0), a = 0.5
CIRCUMFERENCE_05 = 4.836798304624581  # 4.83679830462458093491754202038
# 2 pi g(c0), a = 0.05
CIRCUMFERENCE_005 = 0.31534105492611547  # 0.315341054926115460022234411483
# 2 pi f(c0), a = 0.5; disk integral of sigma agrees to 1e-40
AREA_HT_05 = 1.5114994701951816  # 1.51149947019518154216173188137
# 2 pi f(c0), a = 0.01
AREA_HT_001 = 0.00031422996297637585  # 0.000314229962976375835605950487413
# f + lambda0 g at the a = 0.5 circle
H_CIRCLE_05 = -0.18443133599113046  # -0.184431335991130452551533638216
# polar first integral at r = 0.5, r' = 0, lambda0(0.5)
FIRST_INTEGRAL_05 = -0.18443133599113046  # -0.184431335991130452551533638216
# |(P1, P2)| at a = 0.5
NORMALITY_05 = 3.079201435678004  # 3.07920143567800407738212682934
# constraint density at a = 0.5
U_05 = 6.158402871356008  # 6.15840287135600815476425365869
# lambda0 U at a = 0.5 (y along the normal)
SECOND_VARIATION_05 = -3.399951585227796  # -3.39995158522779616877609837407
# closed-form D(0, pi), a = 0.5
D_05_PI = 61.42574663250423  # 61.4257466325042269679074798224
# lim D / dt^4 = -c U sqrt(-b) / 12, a = 0.5
D_LIMIT_05 = 0.2727380415036309  # 0.272738041503630912579919662321
# excess at x=(0.5,0), dx=(0,1), p=(1,0), lambda0(0.5)
E_EXAMPLE_05 = -1.2268518518518519  # -1.22685185185185185185185185185

# closed-form sigma_HT at r = 0, 0.1, ..., 0.9
SIGMA_HT_GRID = (
    (0.0, 1.0),
    (0.1, 1.0461472499086504),
    (0.2, 1.1995006771068566),
    (0.3, 1.5148792663593875),
    (0.4, 2.129515368759077),
    (0.5, 3.399951585227796),
    (0.6, 6.407737731933594),
    (0.7, 15.411805558795969),
    (0.8, 56.755829903978054),
    (0.9, 577.9669345847169),
)
