use oplax_core::algebras::{check_anticommutative, check_jacobi};
use oplax_core::lax::{
    anticommutative_rhs, closed_form_mu, family_residual_along, gamma_matrix_along,
    general_lax_rhs, oscillator_m, tabulated_lax_rhs, AntiCommutativeCoords, ParamVector,
    StructureConstants,
};
use oplax_core::operad::{
    gerstenhaber_bracket, graded_jacobiator, partial_composition, GradedSign,
};
use oplax_core::oscillator::{aux_functions, Branch, OscState};
use oplax_core::{Operation, Vector};
use proptest::prelude::*;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, n)
}

fn operation(dim: usize, degree: usize) -> impl Strategy<Value = Operation> {
    coeffs(dim.pow(degree as u32 + 1))
        .prop_map(move |c| Operation::from_coeffs(dim, degree, c).unwrap())
}

fn vector(dim: usize) -> impl Strategy<Value = Vector> {
    coeffs(dim).prop_map(|v| Vector::new(v).unwrap())
}

fn coords() -> impl Strategy<Value = AntiCommutativeCoords> {
    prop::array::uniform9(-2.0f64..2.0).prop_map(AntiCommutativeCoords::from_array)
}

/// Evaluation of `f ∘_i g` straight from the definition: apply `g` to the
/// middle block of arguments, then `f`, then the Koszul sign.
fn compose_by_evaluation(f: &Operation, i: usize, g: &Operation, args: &[Vector]) -> Vector {
    let ng = g.degree();
    let inner = g.evaluate(&args[i..i + ng]).unwrap();
    let mut outer: Vec<Vector> = args[..i].to_vec();
    outer.push(inner);
    outer.extend_from_slice(&args[i + ng..]);
    let v = f.evaluate(&outer).unwrap();
    let sign = if (i as i64 * (ng as i64 - 1)).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    Vector::new(v.entries().iter().map(|x| sign * x).collect()).unwrap()
}

/// Direct sum over all index tuples, without the weight-vector trick.
fn evaluate_brute_force(f: &Operation, args: &[Vector]) -> Vec<f64> {
    let d = f.dim();
    let n = f.degree();
    let mut out = vec![0.0; d];
    for (a, slot) in out.iter_mut().enumerate() {
        for flat in 0..d.pow(n as u32) {
            let mut idx = vec![0; n];
            let mut rest = flat;
            for pos in (0..n).rev() {
                idx[pos] = rest % d;
                rest /= d;
            }
            let mut term = f.get(a, &idx);
            for (arg, &j) in args.iter().zip(&idx) {
                term *= arg.entries()[j];
            }
            *slot += term;
        }
    }
    out
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluate_matches_brute_force(
        f in operation(3, 3),
        args in prop::collection::vec(vector(3), 3),
    ) {
        let v = f.evaluate(&args).unwrap();
        prop_assert!(max_diff(v.entries(), &evaluate_brute_force(&f, &args)) < 1e-13);
    }

    #[test]
    fn evaluate_is_multilinear(
        f in operation(3, 2),
        u in vector(3), w in vector(3), other in vector(3),
        a in -2.0f64..2.0, b in -2.0f64..2.0,
        slot in 0usize..2,
    ) {
        let combo = Vector::new(
            u.entries().iter().zip(w.entries()).map(|(x, y)| a * x + b * y).collect(),
        ).unwrap();
        let with = |v: &Vector| {
            let mut args = vec![other.clone(), other.clone()];
            args[slot] = v.clone();
            f.evaluate(&args).unwrap()
        };
        let lhs = with(&combo);
        let (fu, fw) = (with(&u), with(&w));
        let rhs: Vec<f64> = fu.entries().iter().zip(fw.entries()).map(|(x, y)| a * x + b * y).collect();
        prop_assert!(max_diff(lhs.entries(), &rhs) < 1e-12);
    }

    #[test]
    fn identity_is_a_left_unit_under_evaluation(f in operation(3, 2), x in vector(3), y in vector(3)) {
        let id = Operation::identity(3).unwrap();
        let v = f.evaluate(&[x, y]).unwrap();
        prop_assert_eq!(id.evaluate(std::slice::from_ref(&v)).unwrap(), v);
    }

    #[test]
    fn max_abs_diff_is_a_metric(f in operation(2, 2), g in operation(2, 2), h in operation(2, 2)) {
        let d = |x: &Operation, y: &Operation| Operation::max_abs_diff(x, y).unwrap();
        prop_assert_eq!(d(&f, &g), d(&g, &f));
        prop_assert!(d(&f, &h) <= d(&f, &g) + d(&g, &h) + 1e-15);
        prop_assert_eq!(d(&f, &f), 0.0);
    }

    #[test]
    fn partial_composition_matches_evaluation(
        f in operation(2, 3),
        g in operation(2, 2),
        i in 0usize..3,
        args in prop::collection::vec(vector(2), 4),
    ) {
        let h = partial_composition(&f, i, &g).unwrap();
        prop_assert_eq!(h.degree(), f.degree() + g.degree() - 1);
        let direct = compose_by_evaluation(&f, i, &g, &args);
        prop_assert!(max_diff(h.evaluate(&args).unwrap().entries(), direct.entries()) < 1e-13);
    }

    #[test]
    fn bracket_is_graded_antisymmetric(
        df in 1usize..=3, dg in 1usize..=3, seed in any::<u64>(),
    ) {
        use rand::SeedableRng;
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        let dim = 2;
        let f = Operation::random(&mut rng, dim, df).unwrap();
        let g = Operation::random(&mut rng, dim, dg).unwrap();
        let fg = gerstenhaber_bracket(&f, &g).unwrap();
        let gf = gerstenhaber_bracket(&g, &f).unwrap();
        let sign = GradedSign::koszul(f.reduced_degree(), g.reduced_degree()).value();
        let mirrored = gf.scaled(-sign);
        prop_assert!(Operation::max_abs_diff(&fg, &mirrored).unwrap() < 1e-12);
    }

    #[test]
    fn graded_jacobi_identity(
        f in operation(3, 2), g in operation(3, 1), h in operation(3, 2),
    ) {
        let j = graded_jacobiator(&f, &g, &h).unwrap();
        prop_assert!(j.max_abs() < 1e-10);
    }

    #[test]
    fn aux_relations(q in -5.0f64..5.0, p in -5.0f64..5.0, omega in 0.2f64..3.0) {
        let s = OscState::new(q, p, omega).unwrap();
        prop_assume!(s.hamiltonian() > 1e-6);
        let a = aux_functions(&s, Branch::Plus).unwrap();
        let h = s.hamiltonian();
        let scale = 1.0 + h.sqrt();
        prop_assert!((a.a_plus.powi(2) + a.a_minus.powi(2) - 2.0 * (2.0 * h).sqrt()).abs() < 1e-12 * scale);
        prop_assert!((a.a_plus.powi(2) - a.a_minus.powi(2) - 2.0 * p).abs() < 1e-12 * scale);
        prop_assert!((a.a_plus * a.a_minus - omega * q).abs() < 1e-12 * scale);
    }

    #[test]
    fn lax_rhs_maps_are_linear(
        x in operation(3, 2), y in operation(3, 2),
        a in -2.0f64..2.0, b in -2.0f64..2.0, omega in 0.1f64..3.0,
    ) {
        let combo = StructureConstants::new(Operation::linear_combine(a, &x, b, &y).unwrap()).unwrap();
        let (mx, my) = (StructureConstants::new(x).unwrap(), StructureConstants::new(y).unwrap());
        let m = oscillator_m(omega);
        let lin = |r: &dyn Fn(&StructureConstants) -> StructureConstants| {
            let lhs = r(&combo);
            let rhs = Operation::linear_combine(a, r(&mx).as_operation(), b, r(&my).as_operation()).unwrap();
            Operation::max_abs_diff(lhs.as_operation(), &rhs).unwrap()
        };
        prop_assert!(lin(&|mu| general_lax_rhs(mu, &m).unwrap()) < 1e-12);
        prop_assert!(lin(&|mu| tabulated_lax_rhs(mu, omega)) < 1e-12);
    }

    #[test]
    fn reduction_commutes_with_embedding(x in coords(), omega in 0.1f64..3.0) {
        let full = general_lax_rhs(&x.embed(), &oscillator_m(omega)).unwrap();
        let reduced = anticommutative_rhs(&x, omega);
        prop_assert!(AntiCommutativeCoords::project(&full).max_abs_diff(&reduced) < 1e-13);
        prop_assert!(full.antisymmetry_residual() < 1e-15);
    }

    #[test]
    fn closed_form_is_anticommutative(
        c in prop::array::uniform9(-3.0f64..3.0),
        q in -2.0f64..2.0, p in 0.1f64..2.0,
    ) {
        let s = OscState::new(q, p, 1.0).unwrap();
        let mu = closed_form_mu(&ParamVector::new(c).unwrap(), &s, Branch::Plus).unwrap();
        prop_assert!(check_anticommutative(&mu) < 1e-12);
    }

    #[test]
    fn residual_factors_through_gamma_off_shell(
        c in prop::array::uniform9(-3.0f64..3.0),
        t in 0.2f64..1.5, bend in -1.0f64..1.0,
    ) {
        // a path that is not a solution of Hamilton's equations
        let path = move |t: f64| OscState::new(t + bend * t * t, 1.0 + 0.5 * t, 1.3).unwrap();
        let c = ParamVector::new(c).unwrap();
        let r = family_residual_along(&path, &c, t, 1e-5, Branch::Plus).unwrap();
        let g = gamma_matrix_along(&path, t, 1e-5, Branch::Plus).unwrap();
        prop_assert!(r.max_abs_diff(&g.contract(&c)) < 1e-9);
    }
}

#[test]
fn jacobi_is_not_generic_for_the_closed_form_family() {
    let c = ParamVector::new([0.3, -1.1, 0.7, 0.2, 1.5, -0.4, 0.9, 0.6, -1.2]).unwrap();
    let s = OscState::new(0.4, 1.2, 1.0).unwrap();
    let mu = closed_form_mu(&c, &s, Branch::Plus).unwrap();
    assert!(check_jacobi(&mu) > 1e-3);
}
