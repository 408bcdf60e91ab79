//! Static descriptions of what each check asserts.

const ENTRIES: &[(&str, &str)] = &[
    (
        "vacuum",
        "Y(|0>, z) = I, and Y(a, z)|0> is regular at z = 0 with value a:\n\
         for every test state a, a_(n)|0> = 0 for 0 <= n <= W and a_(-1)|0> = a.",
    ),
    (
        "partial-vacuum",
        "Y(|0>, z) = I and a_(-1)|0> = a for every test state a.\n\
         Regularity of Y(a, z)|0> at z = 0 is not required.",
    ),
    (
        "translation",
        "Y(Ta, z) = d/dz Y(a, z) = [T, Y(a, z)]: for every test state a and mode n,\n\
         Y(Ta)_(n) = -n a_(n-1) and [T, a_(n)] = -n a_(n-1) on the grid.",
    ),
    (
        "nth-product",
        "Y(a_(n) b, z) = Y(a, z)_(n) Y(b, z) for all test states a, b and -3 <= n <= 4,\n\
         compared mode by mode on the grid.",
    ),
    (
        "weak-locality",
        "For all test states a, b there is N <= Nmax with\n\
         Res_z (z - w)^n [Y(a, z), Y(b, w)] = 0, i.e. Y(a)_(n) Y(b) = 0, for every n >= N.\n\
         The report gives the largest such N needed.",
    ),
    (
        "locality",
        "(z - w)^N [Y(a, z), Y(b, w)] v = 0 for some N <= Nmax, all test states a, b\n\
         and v of degree <= depth. Field algebras need not satisfy this.",
    ),
    (
        "expansion-identity",
        "Y(Y(a, z) b, -w) c = Y(a, z - w) Y(b, -w) c\n\
         \x20   - p(a, b) Y(b, -w) sum_{j >= 0} d_w^j delta(z - w) Res_x x^(j) Y(a, x) c,\n\
         with Y(a, z - w) expanded in |z| > |w| and x^(j) = x^j / j!, cellwise on [-W, W]^2.",
    ),
    (
        "associativity",
        "(z - w)^N Y(Y(a, z) b, -w) c = (z - w)^N Y(a, z - w) Y(b, -w) c for some N <= Nmax,\n\
         cellwise on [-W, W]^2. The report gives the least N found.",
    ),
    (
        "skewsymmetry",
        "X(a, z) = Y(a, z) on the grid, where X(a, z) b = p(a, b) e^{zT} Y(b, -z) a.\n\
         Holds: a vertex algebra on this window. Fails: a strict field algebra.",
    ),
    (
        "conformal-surrogate",
        "(Ta)_(n) b = -n a_(n-1) b for 0 <= n <= W on the grid, with the skewsymmetry status\n\
         attached. A surrogate for the conformal-algebra axioms other than skewsymmetry.",
    ),
    (
        "recursion-consistency",
        "Y computed through the generator recursion Y(g_(n) k) = Y(g)_(n) Y(k) agrees with Y\n\
         of the resulting state for every presentation of depth <= depth.",
    ),
    (
        "opposite-at-zero",
        "X(a)_(-1) b = b a for every pair of basis elements of the associative algebra.",
    ),
    (
        "axiom-set-a",
        "vacuum, translation, weak-locality and associativity all hold.",
    ),
    ("axiom-set-b", "partial-vacuum and nth-product both hold."),
    (
        "counterexample-commutator",
        "[alpha(z), beta(w)] v = i_{w,z} (z - w)^{-1} v cellwise for every v of degree <= 4,\n\
         where beta(z) = sum_{n > 0} n^{-1} alpha_n z^{-n}.",
    ),
    (
        "counterexample-products",
        "alpha_(j) beta = 0 and beta_(j) alpha = delta_{j,0} I for 0 <= j <= 4.",
    ),
    (
        "counterexample-weak-locality",
        "Both (alpha, beta) and (beta, alpha) are weakly local; the note gives each bound.",
    ),
    (
        "counterexample-skewsymmetry",
        "The skewsymmetry residual a_(0) b + s sum_j (-1)^j d^(j)(b_(j) a) for a = alpha,\n\
         b = beta, with the sign s fixed so that the residual of (alpha, alpha) vanishes.\n\
         Expected to fail, with residual equal to +-I.",
    ),
    (
        "dong",
        "If all ordered pairs among a, b, c are weakly local, then (a_(k) b, c) and\n\
         (c, a_(k) b) are weakly local for k in {-1, 0, 1}. Inapplicable when a pair is not.",
    ),
    (
        "uniqueness",
        "If B(z) is a field with B(z)|0> regular at 0 with value b, and B(z) is local with\n\
         every X(a, w), then B(z) = Y(b, z). Inapplicable when a hypothesis fails.",
    ),
];

/// Every name [`explain`] knows.
pub const CHECK_NAMES: &[&str] = &[
    "vacuum",
    "partial-vacuum",
    "translation",
    "nth-product",
    "weak-locality",
    "locality",
    "expansion-identity",
    "associativity",
    "skewsymmetry",
    "conformal-surrogate",
    "recursion-consistency",
    "opposite-at-zero",
    "axiom-set-a",
    "axiom-set-b",
    "counterexample-commutator",
    "counterexample-products",
    "counterexample-weak-locality",
    "counterexample-skewsymmetry",
    "dong",
    "uniqueness",
];

/// The statement a check asserts, or the closest known names. A name with
/// arguments, such as `dong(alpha, beta, alpha)`, is looked up by its stem.
pub fn explain(name: &str) -> Result<&'static str, Vec<&'static str>> {
    let stem = name.split('(').next().unwrap_or(name).trim();
    if let Some((_, text)) = ENTRIES.iter().find(|(n, _)| *n == stem) {
        return Ok(text);
    }
    let mut scored: Vec<(f64, &'static str)> = CHECK_NAMES
        .iter()
        .map(|n| (strsim::jaro_winkler(stem, n), *n))
        .collect();
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    Err(scored.into_iter().take(3).map(|(_, n)| n).collect())
}
