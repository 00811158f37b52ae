"""Citation index: every tag a report may carry, with the result it names."""

CITATIONS = {
    "khintchine-gauge-dichotomy":
        "Gauge form of Khintchine/Jarnik for K_{m,phi}: divergence of sum h(phi(q)) q^m "
        "gives full h-measure and large intersection; convergence gives measure zero.",
    "linear-forms-gauge-dichotomy":
        "Linear forms S^b_{m,n,psi} with m+n>2: membership in G^{Id^{m(n-1)}h} iff "
        "sum over q of h(psi(q)/|q|)|q|^m diverges.",
    "groshev-gauge-dichotomy":
        "Groshev sets Gamma_{m,n,phi} with n>1: membership in G^{Id^{m(n-1)}h} iff "
        "sum over Q of h(phi(Q)) Q^{m+n-1} diverges.",
    "resonant-gauge-dichotomy":
        "Resonant frequencies R_{n,nu} with nu>n-1: membership in G^{Id^{n-1}h} iff "
        "sum h(q^{-(nu+1)/n}) diverges; measure zero otherwise.",
    "resonant-all-predicate":
        "R_n: membership in G^{Id^{n-1}h} iff h(r) is not o(r^s) for any s>0.",
    "diophantine-type-gauge-dichotomy":
        "Numbers L_sigma not of Diophantine type sigma: membership in G^h iff "
        "sum h(q^{-(2+sigma)/2}) diverges.",
    "liouville-predicate":
        "Liouville numbers L: membership in G^h iff h(r) is not o(r^s) for any s>0.",
    "liouville-measure-olsen":
        "Olsen: H^h(L) is zero if h = o(r^s) for some s>0 and infinite in every open set otherwise.",
    "countable-intersection-closure":
        "The class G^g(V) is closed under countable intersections.",
    "gauge-monotonicity":
        "If g1 precedes g2 then G^{g1}(V) contains G^{g2}(V).",
    "class-measure-consequence":
        "A set in G^g(V) has infinite H^{g'}-measure in V for every gauge g' preceding g.",
    "lebesgue-case":
        "When h does not precede Id^D, H^h is a multiple of Lebesgue measure; divergence gives full measure.",
    "log-refined-boundary":
        "Integral test at the power boundary: sum q^{-1}(log q)^b diverges iff b >= -1, "
        "and one more iterated-log level is decided the same way.",
    "series-integral-test":
        "Integral comparison for sums of q^a (log q)^b: divergence iff a > -1 or the boundary rule holds.",
    "numeric-series-fit":
        "Numeric fallback: least-squares fit of log terms against log q; no theorem claim.",
    "auxiliary-log-gauge":
        "Auxiliary gauge built by shifting the log exponent by -1 (strictly larger gauge) "
        "to turn class membership into infinite measure.",
    "jarnik-besicovitch-dimension":
        "Jarnik-Besicovitch: dim K_{m,q^-tau} = (m+1)/tau for tau > (m+1)/m.",
    "linear-forms-dimension":
        "Bovey-Dodson type formula for linear forms: m(n-1) + (m+n)/(tau+1), capped at mn.",
    "resonant-dimension-formula":
        "Dodson-Vickers: dim R_{n,nu} = n - 1 + n/(nu+1).",
    "diophantine-type-dimension":
        "Bernik-Dodson: dim L_sigma = 2/(2+sigma).",
    "intersection-dimension":
        "A countable intersection of sets in G^g classes has dimension the infimum of theirs.",
    "equivconv-shells":
        "Shell comparison: sum h(q^{-(nu+1)/n}) and sum over Z^n of h(|q|_inf^{-nu-1}) converge together.",
    "dirichlet-theorem":
        "Dirichlet: |x - p/q|_inf < q^{-1-1/d} for infinitely many (p, q).",
    "net-measure-tree-dp":
        "c-adic net measure computed exactly by dynamic programming over the cube tree.",
    "slab-cover-count":
        "The zone |q.w| < |q|^-nu in the unit cube is covered by O(|q|^{(n-1)(nu+1)}) cubes of side |q|^{-nu-1}.",
    "hurwitz-constant":
        "Hurwitz: |x - p/q| < 1/(sqrt5 q^2) infinitely often, sharp for the golden ratio.",
    "siegel-condition":
        "Siegel small-divisor condition |q.w| >= gamma/|q|_1^nu.",
    "rotation-number":
        "Rotation number as the uniform limit of (f^q(x) - x)/q for a lift of a circle homeomorphism.",
}


def resolve(tag: str) -> str:
    return CITATIONS[tag]
