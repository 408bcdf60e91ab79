//! The uniqueness property: a field `B` that is local with every opposite
//! field `X(a)` and creates `b` from the vacuum equals `Y(b)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::FieldAlgebra;
use crate::arith::{self, q_frac};
use crate::fields::{fields_differ, find_locality_order, Field, Grid};
use crate::fock::{self, Monomial};
use crate::report::{labelled, CertifiedWindow, CheckReport, ExpRange, Witness};
use crate::state::{Parity, StateModel};
use crate::vector::{Basis, Vector};

/// Sample sets and scales for [`uniqueness_check`].
pub struct UniquenessSetup<M: StateModel> {
    pub algebra: FieldAlgebra<M>,
    pub opposite: FieldAlgebra<M>,
    /// States `a` whose opposite fields `X(a, w)` are tested against `B(z)`.
    pub samples: Vec<Vector<M::Basis>>,
    /// Vectors `v` the commutators act on.
    pub states: Vec<M::Basis>,
    pub window: i64,
    pub n_max: i64,
    pub grid: Grid<M::Basis>,
}

impl<M: StateModel> UniquenessSetup<M> {
    pub fn new(
        algebra: &FieldAlgebra<M>,
        samples: Vec<Vector<M::Basis>>,
        states: Vec<M::Basis>,
        window: i64,
        n_max: i64,
        grid: Grid<M::Basis>,
    ) -> Self {
        Self {
            opposite: algebra.opposite(),
            algebra: algebra.clone(),
            samples,
            states,
            window,
            n_max,
            grid,
        }
    }
}

/// `holds`: hypotheses and conclusion hold. `inapplicable`: a hypothesis
/// fails (note starts with `hypothesis`). `fails`: hypotheses hold but
/// `B != Y(b)`, which would contradict the theorem on this window.
///
/// The locality hypothesis is read with two variables, `B(z)` against
/// `X(a, w)`.
pub fn uniqueness_check<M: StateModel>(
    setup: &UniquenessSetup<M>,
    candidate: &Field<M::Basis>,
    b: &Vector<M::Basis>,
) -> CheckReport {
    let name = format!("uniqueness({}, {b})", candidate.label());
    let params = setup.grid.params(Some(setup.n_max));
    let vac = setup.algebra.vacuum();
    for n in 0..=setup.window {
        let r = candidate.mode(n, &vac);
        if !r.is_zero() {
            return CheckReport::inapplicable(name, params, format!("hypothesis fails: B_({n})|0> = {r} is not zero"));
        }
    }
    let created = candidate.mode(-1, &vac);
    if created != *b {
        return CheckReport::inapplicable(
            name,
            params,
            format!("hypothesis fails: B_(-1)|0> = {created}, expected {b}"),
        );
    }
    let mut order = 0;
    for a in &setup.samples {
        let x = setup.opposite.y(a);
        match find_locality_order(candidate, &x, &setup.states, setup.window, setup.n_max) {
            Ok(n) => order = order.max(n),
            Err(f) => {
                let (p, q) = f.cell;
                return CheckReport::inapplicable(
                    name,
                    params,
                    format!(
                        "hypothesis fails: (z-w)^{} [B(z), X({a}, w)] {} has cell ({p}, {q}) = {}",
                        f.n, f.vector, f.value
                    ),
                );
            }
        }
    }
    let y = setup.algebra.y(b);
    let mut window: CertifiedWindow = setup.grid.window();
    window.z = Some(ExpRange::symmetric(setup.window));
    window.w = Some(ExpRange::symmetric(setup.window));
    match fields_differ(candidate, &y, &setup.grid) {
        None => CheckReport::holds(name, params, window).with_found(Some(order)),
        Some(d) => {
            let mut w: Witness = d.witness("uniqueness", candidate.label(), Some(&b.to_string()), None);
            w.expected = Some(labelled(&d.rhs));
            CheckReport::fails(name, params, window, w).with_note("hypotheses hold but B differs from Y(b)")
        }
    }
}

/// A field whose only nonzero mode is `op` at mode 0, i.e. `op z^{-1}`.
pub fn mode_zero_perturbation<B: Basis>(
    label: impl Into<String>,
    op: impl Fn(&B) -> Vector<B> + Send + Sync + 'static,
) -> Field<B> {
    Field::new(
        label,
        Parity::Even,
        move |n, b| if n == 0 { op(b) } else { Vector::zero() },
        |_| 1,
    )
}

/// `count` seeded perturbations `r z^{-1} P` of free-boson fields, with `r` a
/// nonzero rational and `P` either the identity or `alpha_k`, `k` in
/// `{-3, ..., 3} \ {0}`.
pub fn seeded_perturbations(seed: u64, count: usize) -> Vec<Field<Monomial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let num = loop {
                let n: i64 = rng.gen_range(-9..=9);
                if n != 0 {
                    break n;
                }
            };
            let r = q_frac(num, rng.gen_range(1..=5));
            let k: i64 = rng.gen_range(0..=6) - 3;
            let rs = arith::pretty(&r);
            if k == 0 {
                mode_zero_perturbation(format!("({rs})*I z^-1"), move |b: &Monomial| {
                    Vector::term(b.clone(), r.clone())
                })
            } else {
                mode_zero_perturbation(format!("({rs})*alpha_{k} z^-1"), move |b: &Monomial| {
                    fock::alpha_mode_basis(k, b).scaled(&r)
                })
            }
        })
        .collect()
}
