// Generated by tools/gen_bessel_coeffs.py. Do not edit by hand.

/// Chebyshev coefficients of J0(x).
pub(super) const J0_SMALL: [f64; 17] = [
    0.15772797147489012,
    -0.008723442352852221,
    0.2651786132033368,
    -0.37009499387264977,
    0.15806710233209725,
    -0.034893769411408884,
    0.004819180069467605,
    -0.00046062616620627504,
    3.246032882100508e-05,
    -1.7619469077621507e-06,
    7.608163592418782e-08,
    -2.679253530557673e-09,
    7.848696314479465e-11,
    -1.9438346867370164e-12,
    4.125320595634374e-14,
    -7.588508125447546e-16,
    1.2218515873961411e-17,
];

/// Chebyshev coefficients of J1(x) / x.
pub(super) const J1_SMALL: [f64; 16] = [
    0.08104484632565812,
    -0.1489751450676521,
    0.1609992623572097,
    -0.08268049176681791,
    0.022213639654966037,
    -0.003646940600769276,
    0.0004050337728354822,
    -3.255554866857259e-05,
    1.9858774049915165e-06,
    -9.521984756750436e-08,
    3.687133759097148e-09,
    -1.178026622695885e-10,
    3.160154580348003e-12,
    -7.221755239651773e-14,
    1.4232144003513942e-15,
    -2.4441972916190464e-17,
];

/// Chebyshev coefficients of Y0(x) - (2/pi) ln(x) J0(x).
pub(super) const Y0_SMALL: [f64; 17] = [
    -0.03314611320328494,
    -0.2744743055297453,
    0.17903431407718265,
    0.26156734625504663,
    -0.17730201278114358,
    0.04719668959576339,
    -0.007287962479552079,
    0.0007531135932577742,
    -5.632079141056987e-05,
    3.206532537654801e-06,
    -1.44072332740187e-07,
    5.248794787330516e-09,
    -1.5837552541812015e-10,
    4.02633081830612e-12,
    -8.747341203310769e-14,
    1.6434898714919468e-15,
    -2.6977881152566837e-17,
];

/// Chebyshev coefficients of (Y1(x) - (2/pi) ln(x) J1(x) + 2/(pi x)) / x.
pub(super) const Y1_SMALL: [f64; 16] = [
    0.0025380132357417816,
    -0.01608717304766875,
    -0.09591204536083074,
    0.08445197259652346,
    -0.028328123944594365,
    0.005289897544167113,
    -0.0006414551451326356,
    5.505982873338744e-05,
    -3.53808001868935e-06,
    1.7707804556154404e-07,
    -7.11055004989928e-09,
    2.344337905911516e-10,
    -6.4651518414115946e-12,
    1.51429151205002e-13,
    -3.0511859694473254e-15,
    5.34668038572867e-17,
];

/// Chebyshev coefficients of P0(x), 8 < x <= 16.
pub(super) const P0_MID: [f64; 12] = [
    0.9993252498980133,
    -0.00040006351721421106,
    1.6859646846680702e-06,
    -2.045033557529122e-08,
    4.55755252194438e-10,
    -1.5217381645181637e-11,
    6.79063285184628e-13,
    -3.7714025561745306e-14,
    2.485708622910421e-15,
    -1.8803803589997687e-16,
    1.5933504267360248e-17,
    -1.4848873637847692e-18,
];

/// Chebyshev coefficients of x Q0(x), 8 < x <= 16.
pub(super) const Q0_MID: [f64; 13] = [
    -0.12430819085223158,
    0.0004058025209393715,
    -3.214519696986209e-06,
    5.580485570815939e-08,
    -1.5837555226272458e-09,
    6.317098714966027e-11,
    -3.2366825191444484e-12,
    2.0098916884411417e-13,
    -1.453564509527278e-14,
    1.1899156461945616e-15,
    -1.0796157317412325e-16,
    1.0684026351093811e-17,
    -1.1389285531870571e-18,
];

/// Chebyshev coefficients of P1(x), 8 < x <= 16.
pub(super) const P1_MID: [f64; 12] = [
    1.0011290438409142,
    0.0006712260602193439,
    -2.1904933769942436e-06,
    2.4496735875622773e-08,
    -5.247566970061887e-10,
    1.7117864515262862e-11,
    -7.522458310911059e-13,
    4.132659039673479e-14,
    -2.7017484776618337e-15,
    2.0309143266912737e-16,
    -1.7121854323223272e-17,
    1.5889781252778099e-18,
];

/// Chebyshev coefficients of x Q1(x), 8 < x <= 16.
pub(super) const Q1_MID: [f64; 13] = [
    0.37402743179449943,
    -0.0005721102716350445,
    3.970114116820258e-06,
    -6.524696642361495e-08,
    1.7975243918901618e-09,
    -7.037817145418612e-11,
    3.560415405304817e-12,
    -2.1905422289665987e-13,
    1.5730590439145585e-14,
    -1.2805663762454156e-15,
    1.156605040073861e-16,
    -1.1402871441955347e-17,
    1.2116889447711967e-18,
];

/// Chebyshev coefficients of P0(x), x > 16.
pub(super) const P0_FAR: [f64; 9] = [
    0.9998633023384497,
    -0.00013648886310488532,
    2.0780313353656052e-07,
    -9.857788606148104e-10,
    9.383368927791674e-12,
    -1.4621286125578745e-13,
    3.3133022190828238e-15,
    -1.0105835195644757e-16,
    3.929288267075837e-18,
];

/// Chebyshev coefficients of x Q0(x), x > 16.
pub(super) const Q0_FAR: [f64; 10] = [
    -0.12485821763492462,
    0.0001413644236549286,
    -4.150028647889787e-07,
    2.9015981968262687e-09,
    -3.624383980697338e-11,
    6.943926962909728e-13,
    -1.855843147582336e-14,
    6.486168386500605e-16,
    -2.8295495472066645e-17,
    1.4878182041255777e-18,
];

/// Chebyshev coefficients of P1(x), x > 16.
pub(super) const P1_FAR: [f64; 9] = [
    1.0002280689314846,
    0.00022779995507688633,
    -2.677968489986972e-07,
    1.16871604835376e-09,
    -1.0676581047982343e-11,
    1.6235658624460209e-13,
    -3.620440132592327e-15,
    1.0917734742679351e-16,
    -4.209215456539273e-18,
];

/// Chebyshev coefficients of x Q1(x), x > 16.
pub(super) const Q1_FAR: [f64; 10] = [
    0.37480128117959466,
    -0.00019820699109886498,
    5.084291762528013e-07,
    -3.358677942534722e-09,
    4.0667347869866965e-11,
    -7.640333311679325e-13,
    2.0147608731587012e-14,
    -6.973329410628208e-16,
    3.01968600438664e-17,
    -1.57862973318293e-18,
];
