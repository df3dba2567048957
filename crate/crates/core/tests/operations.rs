//! Worked examples for every public operation, grouped by module.

use sepdeg_core::gf::{FieldSpec, GfError};
use sepdeg_core::invariants::{InvariantEngine, InvariantsError};
use sepdeg_core::linalg::{kernel_basis, stack_rows, LinalgError, MatrixFq};
use sepdeg_core::mpoly::{monomials_of_degree, Monomial, Polynomial};
use sepdeg_core::oracle::{
    center_exponent_bound, classify_pm, lucas, pgroup_lower_bound, predict_delta_cyclic_faithful,
    predict_epsilon_cyclic, predict_gamma_cyclic_sum, predict_gamma_w, predict_klein, verify, Target, TargetKind,
    VerifyOptions,
};
use sepdeg_core::reps::{
    build, close_group, dihedral_regular, direct_sum, dual, fixed_space, jordan_type, KleinVariant, Lambda,
    MatrixGroupRep, ModuleDescriptor, DEFAULT_GROUP_CAP,
};

fn f2() -> FieldSpec {
    FieldSpec::prime(2).unwrap()
}

fn f3() -> FieldSpec {
    FieldSpec::prime(3).unwrap()
}

fn f4() -> FieldSpec {
    FieldSpec::canonical(2, 2).unwrap()
}

fn omega() -> Lambda {
    Lambda::Coords(vec![0, 1])
}

fn engine(desc: &ModuleDescriptor) -> InvariantEngine {
    InvariantEngine::new(build(desc, &desc.default_field().unwrap()).unwrap())
}

/// Schoolbook product of coefficient vectors over F_p, reduced by a monic modulus.
fn polymul_mod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for top in (k..prod.len()).rev() {
        let c = prod[top];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let idx = top - k + i;
                prod[idx] = (prod[idx] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

// ---- gf ----

#[test]
fn fq_make_examples() {
    assert_eq!(FieldSpec::new(2, 2, &[1, 1, 1]).unwrap().q(), 4);
    assert!(matches!(FieldSpec::new(2, 2, &[1, 0, 1]), Err(GfError::ReducibleModulus { .. })));
    assert_eq!(FieldSpec::new(5, 1, &[0, 1]).unwrap().q(), 5);
    assert!(matches!(FieldSpec::new(4, 1, &[0, 1]), Err(GfError::NonPrime(4))));
    assert!(matches!(FieldSpec::new(2, 2, &[1, 1]), Err(GfError::BadDegree(_))));
}

#[test]
fn fq_arith_examples() {
    let f5 = FieldSpec::prime(5).unwrap();
    assert_eq!(f5.element(3).inv().unwrap().code(), 2);
    let f = f4();
    let w = f.from_coeffs(&[0, 1]).unwrap();
    assert!((&w * &w.pow(2)).is_one());
    let one_plus_w = f.from_coeffs(&[1, 1]).unwrap();
    let sq = &one_plus_w * &one_plus_w;
    assert_eq!(sq.coeffs(), polymul_mod(&[1, 1], &[1, 1], &[1, 1, 1], 2));
    assert_eq!(sq, w);
    assert_eq!(f.element(0).inv(), Err(GfError::DivisionByZero));
    assert!(matches!(w.checked_add(&f5.element(1)), Err(GfError::FieldMismatch(..))));
}

#[test]
fn element_order_examples() {
    let f = f4();
    assert_eq!(f.element(f.one()).order().unwrap(), 1);
    let w = f.from_coeffs(&[0, 1]).unwrap();
    // independent: repeated multiplication by t modulo t^2 + t + 1
    let mut x = vec![0, 1];
    let mut k = 1;
    while x != [1, 0] {
        x = polymul_mod(&x, &[0, 1], &[1, 1, 1], 2);
        k += 1;
    }
    assert_eq!(w.order().unwrap(), k);
    assert_eq!(k, 3);
    let f5 = FieldSpec::prime(5).unwrap();
    let powers: Vec<u32> = (1..=4).map(|e| f5.pow(2, e)).collect();
    assert_eq!(powers, vec![2, 4, 3, 1]);
    assert_eq!(f5.element(2).order().unwrap(), 4);
    assert_eq!(f5.element(0).order(), Err(GfError::DivisionByZero));
}

#[test]
fn root_of_unity_examples() {
    let f = f4();
    let r = f.root_of_unity(3).unwrap();
    assert_eq!(r.coeffs(), vec![0, 1]);
    let by_search = f.elements().find(|&c| c != 0 && f.element(c).order().unwrap() == 3).unwrap();
    assert_eq!(r.code(), by_search);
    assert!(f2().root_of_unity(1).unwrap().is_one());
    assert!(matches!(f.root_of_unity(2), Err(GfError::NoSuchRoot { .. })));
}

// ---- linalg ----

#[test]
fn matrix_examples() {
    let f = f2();
    let i_plus_n = MatrixFq::from_ints(&f, &[vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
    let expected = MatrixFq::from_ints(&f, &[vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
    assert_eq!(i_plus_n.inv().unwrap(), expected);
    assert!(i_plus_n.mul(&expected).unwrap().is_identity());
    assert_eq!(i_plus_n.minus_identity().unwrap().rank(), 2);
    assert_eq!(MatrixFq::zeros(&f, 2, 2).inv(), Err(LinalgError::Singular));
    let wide = MatrixFq::zeros(&f, 2, 3);
    assert!(matches!(wide.mul(&wide), Err(LinalgError::ShapeMismatch(_))));
}

#[test]
fn kernel_examples() {
    let a = MatrixFq::from_ints(&f2(), &[vec![1, 1], vec![0, 0]]).unwrap();
    assert_eq!(kernel_basis(&a), vec![vec![1, 1]]);
    assert!(kernel_basis(&MatrixFq::identity(&f2(), 3)).is_empty());
    assert_eq!(kernel_basis(&MatrixFq::zeros(&f3(), 2, 2)), vec![vec![1, 0], vec![0, 1]]);
}

#[test]
fn stack_examples() {
    let f = f2();
    let a = MatrixFq::from_ints(&f, &[vec![1, 0]]).unwrap();
    let b = MatrixFq::from_ints(&f, &[vec![0, 1]]).unwrap();
    assert_eq!(stack_rows(std::slice::from_ref(&a)).unwrap(), a);
    let s = stack_rows(&[a, b]).unwrap();
    assert_eq!((s.rows(), s.cols()), (2, 2));
    assert!(stack_rows(&[MatrixFq::zeros(&f, 1, 2), MatrixFq::zeros(&f, 1, 3)]).is_err());
    let w2 = engine(&ModuleDescriptor::klein(KleinVariant::W2m { m: 1 }));
    assert_eq!(w2.invariant_basis(1).dim(), 1);
}

// ---- mpoly ----

#[test]
fn monomial_examples() {
    let m = |v: &[u32]| Monomial(v.to_vec());
    assert_eq!(monomials_of_degree(2, 2), vec![m(&[2, 0]), m(&[1, 1]), m(&[0, 2])]);
    assert_eq!(monomials_of_degree(1, 5), vec![m(&[5])]);
    assert_eq!(monomials_of_degree(3, 1), vec![m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])]);
}

#[test]
fn substitution_examples() {
    let f = f2();
    let x1 = Polynomial::var(&f, 2, 0);
    let x2 = Polynomial::var(&f, 2, 1);
    let images = vec![x1.clone(), x2.add(&x1).unwrap()];
    assert_eq!(x2.pow(2).unwrap().substitute_linear(&images).unwrap().to_string(), "x1^2 + x2^2");
    let g = x1.mul(&x2).unwrap().add(&x2).unwrap();
    assert_eq!(g.substitute_linear(&[x1.clone(), x2.clone()]).unwrap(), g);
    assert_eq!(x1.mul(&x2).unwrap().substitute_linear(&images).unwrap().to_string(), "x1^2 + x1*x2");
    assert!(x1.substitute_linear(std::slice::from_ref(&x1)).is_err());
}

#[test]
fn evaluation_examples() {
    let f = f2();
    let x1 = Polynomial::var(&f, 2, 0);
    let x2 = Polynomial::var(&f, 2, 1);
    let p = x2.pow(2).unwrap().add(&x1.mul(&x2).unwrap()).unwrap();
    assert_eq!(p.evaluate(&[0, 1]).unwrap(), 1);
    let c = p.add(&Polynomial::constant(&f, 2, 1)).unwrap();
    assert_eq!(c.evaluate(&[0, 0]).unwrap(), 1);
    let g = f3();
    let s = Polynomial::linear(&g, &[1, 1, 1]);
    assert_eq!(s.evaluate(&[1, 1, 1]).unwrap(), 0);
    assert!(s.evaluate(&[1, 1]).is_err());
}

#[test]
fn product_examples() {
    let f = f2();
    let x1 = Polynomial::var(&f, 2, 0);
    let x2 = Polynomial::var(&f, 2, 1);
    let n = x2.mul(&x2.add(&x1).unwrap()).unwrap();
    assert_eq!(n.to_string(), "x1*x2 + x2^2");
    let one = Polynomial::constant(&f, 2, 1);
    assert_eq!(n.mul(&one).unwrap(), n);
    assert!(n.mul(&Polynomial::zero(&f, 2)).unwrap().is_zero());
}

// ---- reps ----

#[test]
fn build_examples() {
    let rep = build(&ModuleDescriptor::jordan(2, 2, 3), &f2()).unwrap();
    let sigma_inv = &rep.generators()[0].inverse;
    let expected = MatrixFq::from_ints(&f2(), &[vec![1, 0, 0], vec![1, 1, 0], vec![0, 1, 1]]).unwrap();
    assert_eq!(sigma_inv, &expected);

    let w3 = build(&ModuleDescriptor::klein(KleinVariant::WOdd { m: 1 }), &f2()).unwrap();
    let s1 = MatrixFq::from_ints(&f2(), &[vec![1, 0, 1], vec![0, 1, 0], vec![0, 0, 1]]).unwrap();
    let s2 = MatrixFq::from_ints(&f2(), &[vec![1, 0, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
    assert_eq!(w3.generator("sigma1").unwrap().matrix, s1);
    assert_eq!(w3.generator("sigma2").unwrap().matrix, s2);

    let s2b = build(&ModuleDescriptor::sym(ModuleDescriptor::Borel { p: 3 }, 2), &f3()).unwrap();
    assert_eq!(s2b.dim(), 3);
    let sigma = &s2b.generator("sigma").unwrap().matrix;
    assert_eq!(sigma.get(0, 1), 1);
    assert_eq!(sigma.get(1, 2), 2);
}

#[test]
fn closure_examples() {
    let k = close_group(&build(&ModuleDescriptor::klein(KleinVariant::Regular), &f2()).unwrap(), DEFAULT_GROUP_CAP)
        .unwrap();
    assert_eq!((k.order(), k.center_indices().len()), (4, 4));
    let j = close_group(&build(&ModuleDescriptor::jordan(2, 2, 4), &f2()).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    assert_eq!(j.order(), 4);
    assert_eq!(j.orders()[1], 4);
    let b = close_group(&build(&ModuleDescriptor::Borel { p: 3 }, &f3()).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    assert_eq!(b.order(), 6);
}

#[test]
fn dual_examples() {
    let rep = build(&ModuleDescriptor::jordan(2, 2, 3), &f2()).unwrap();
    assert_eq!(dual(&dual(&rep).unwrap()).unwrap().generators(), rep.generators());
    let v2 = build(&ModuleDescriptor::jordan(2, 1, 2), &f2()).unwrap();
    assert_eq!(jordan_type(&dual(&v2).unwrap().generators()[0].matrix).unwrap(), vec![2]);
    let f = f4();
    let w = build(&ModuleDescriptor::w(2, 1, 3, 2, omega()), &f).unwrap();
    let dw = dual(&w).unwrap();
    let alpha_dual = &dw.generator("alpha").unwrap().matrix;
    let w_inv = f.from_coeffs(&[0, 1]).unwrap().inv().unwrap().code();
    assert_eq!(alpha_dual.get(0, 0), w_inv);
    assert_eq!(alpha_dual.get(1, 1), w_inv);
}

#[test]
fn direct_sum_examples() {
    let a = build(&ModuleDescriptor::jordan(2, 2, 3), &f2()).unwrap();
    let b = build(&ModuleDescriptor::jordan(2, 2, 2), &f2()).unwrap();
    assert_eq!(direct_sum(std::slice::from_ref(&a)).unwrap().generators(), a.generators());
    let s = direct_sum(&[a.clone(), b.clone()]).unwrap();
    let blk = MatrixFq::block_diag(&[a.generators()[0].matrix.clone(), b.generators()[0].matrix.clone()]).unwrap();
    assert_eq!((s.dim(), &s.generators()[0].matrix), (5, &blk));
    let f = f4();
    let desc = ModuleDescriptor::sum(vec![
        ModuleDescriptor::w(2, 1, 3, 2, Lambda::Coords(vec![1])),
        ModuleDescriptor::w(2, 1, 3, 1, omega()),
    ]);
    let v = build(&desc, &f).unwrap();
    assert_eq!(v.dim(), 3);
    assert_eq!(v.labels(), vec!["sigma", "alpha"]);
}

#[test]
fn fixed_space_examples() {
    assert_eq!(fixed_space(&build(&ModuleDescriptor::jordan(2, 2, 3), &f2()).unwrap()).unwrap(), vec![vec![0, 0, 1]]);
    let w = build(&ModuleDescriptor::w(2, 1, 3, 1, omega()), &f4()).unwrap();
    assert!(fixed_space(&w).unwrap().is_empty());
    let t = MatrixGroupRep::new(&f2(), 1, vec![("id".into(), MatrixFq::identity(&f2(), 1))]).unwrap();
    assert_eq!(fixed_space(&t).unwrap(), vec![vec![1]]);
}

#[test]
fn jordan_type_examples() {
    let f = f2();
    let j3 = MatrixFq::from_ints(&f, &[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]]).unwrap();
    assert_eq!(jordan_type(&j3).unwrap(), vec![3]);
    assert_eq!(jordan_type(&MatrixFq::identity(&f, 4)).unwrap(), vec![1, 1, 1, 1]);
    let sq = j3.mul(&j3).unwrap();
    assert_eq!(sq.minus_identity().unwrap().rank(), 1);
    assert_eq!(jordan_type(&sq).unwrap(), vec![2, 1]);
}

#[test]
fn exponent_examples() {
    let k = close_group(&build(&ModuleDescriptor::klein(KleinVariant::Regular), &f2()).unwrap(), DEFAULT_GROUP_CAP)
        .unwrap();
    assert_eq!(k.group_exponent(), 2);
    let z4 = close_group(&build(&ModuleDescriptor::jordan(2, 2, 3), &f2()).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    assert_eq!(z4.group_exponent(), 4);
    let d8 = close_group(&build(&dihedral_regular(2), &f2()).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    assert_eq!((d8.center_exponent(), d8.group_exponent()), (2, 4));
}

// ---- invariants ----

#[test]
fn coaction_examples() {
    let e = engine(&ModuleDescriptor::jordan(2, 1, 2));
    let im: Vec<String> = e.coaction("sigma").unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(im, vec!["x1", "x1 + x2"]);
    let t =
        InvariantEngine::new(MatrixGroupRep::new(&f3(), 2, vec![("id".into(), MatrixFq::identity(&f3(), 2))]).unwrap());
    let im: Vec<String> = t.coaction("id").unwrap().iter().map(|p| p.to_string()).collect();
    assert_eq!(im, vec!["x1", "x2"]);
    let w = engine(&ModuleDescriptor::w(2, 1, 3, 2, omega()));
    let f = w.field().clone();
    let winv = f.from_coeffs(&[0, 1]).unwrap().inv().unwrap().code();
    let im = w.coaction("alpha").unwrap();
    for (i, p) in im.iter().enumerate() {
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coefficient(&Monomial::var(2, i)), winv);
    }
    assert!(matches!(w.coaction("beta"), Err(InvariantsError::UnknownGenerator(_))));
}

#[test]
fn delta_op_examples() {
    let e = engine(&ModuleDescriptor::jordan(2, 1, 2));
    let f = e.field().clone();
    let x1 = Polynomial::var(&f, 2, 0);
    let x2 = Polynomial::var(&f, 2, 1);
    assert_eq!(e.delta_op("sigma", &x2.pow(2).unwrap()).unwrap(), x1.pow(2).unwrap());
    assert!(e.delta_op("sigma", &x1).unwrap().is_zero());
    assert_eq!(e.delta_op("sigma", &x2).unwrap(), x1);
}

#[test]
fn invariant_basis_examples() {
    let e = engine(&ModuleDescriptor::jordan(2, 1, 2));
    let b1: Vec<String> = e.invariant_basis(1).basis.iter().map(|p| p.to_string()).collect();
    assert_eq!(b1, vec!["x1"]);
    let b2 = e.invariant_basis(2);
    let names: Vec<String> = b2.basis.iter().map(|p| p.to_string()).collect();
    assert_eq!(names, vec!["x1^2", "x1*x2 + x2^2"]);
    // independent: every one of the 8 quadrics tested by substitution
    let f = e.field().clone();
    let mons = monomials_of_degree(2, 2);
    let invariant_count = (0..8u32)
        .filter(|bits| {
            let c: Vec<u32> = (0..3).map(|i| (bits >> i) & 1).collect();
            e.is_invariant(&Polynomial::from_vector(&f, 2, &mons, &c)).unwrap()
        })
        .count();
    assert_eq!(invariant_count, 1 << b2.dim());
    let t =
        InvariantEngine::new(MatrixGroupRep::new(&f3(), 3, vec![("id".into(), MatrixFq::identity(&f3(), 3))]).unwrap());
    assert_eq!(t.invariant_basis(3).dim(), 10);
}

#[test]
fn monomial_in_invariants_examples() {
    let k = engine(&ModuleDescriptor::klein(KleinVariant::V2m { m: 2, lambda: Lambda::Coords(vec![0]) }));
    assert!(!k.monomial_in_invariants(2, &Monomial(vec![0, 0, 0, 2])).unwrap());
    let e = engine(&ModuleDescriptor::jordan(2, 1, 2));
    assert!(e.monomial_in_invariants(2, &Monomial(vec![0, 2])).unwrap());
    assert!(e.monomial_in_invariants(1, &Monomial(vec![1, 0])).unwrap());
}

#[test]
fn epsilon_examples() {
    let e = engine(&ModuleDescriptor::jordan(2, 2, 3));
    let r = e.epsilon(&[0, 0, 1], None).unwrap();
    assert_eq!(r.degree_found, 4);
    assert_eq!(r.per_degree_dims.len(), 4);
    assert_ne!(r.witness.evaluate(&[0, 0, 1]).unwrap(), 0);
    let e = engine(&ModuleDescriptor::jordan(2, 1, 2));
    let r = e.epsilon(&[0, 1], None).unwrap();
    assert_eq!((r.degree_found, r.witness.to_string()), (2, "x1*x2 + x2^2".to_string()));
    assert_eq!(e.epsilon(&[1, 1], None).unwrap().degree_found, 1);
    assert_eq!(e.epsilon(&[0, 0], None), Err(InvariantsError::ZeroPoint));
}

#[test]
fn delta_gamma_examples() {
    assert_eq!(engine(&ModuleDescriptor::jordan(3, 2, 4)).delta_value().unwrap().value, 9);
    assert_eq!(engine(&ModuleDescriptor::w(2, 1, 3, 2, omega())).gamma_value().unwrap().value, 6);
    assert_eq!(engine(&ModuleDescriptor::w(2, 1, 3, 2, omega())).delta_value().unwrap().value, 0);
}

#[test]
fn orbit_product_examples() {
    let e = engine(&ModuleDescriptor::jordan(2, 1, 2));
    let f = e.field().clone();
    assert_eq!(e.orbit_product(&Polynomial::var(&f, 2, 1)).unwrap().to_string(), "x1*x2 + x2^2");
    let x1 = Polynomial::var(&f, 2, 0);
    assert_eq!(e.orbit_product(&x1).unwrap(), x1);
    let e = engine(&ModuleDescriptor::jordan(2, 2, 3));
    let n = e.orbit_product(&Polynomial::var(&f, 3, 2)).unwrap();
    assert_eq!(n.degree(), Some(4));
    assert!(e.is_invariant(&n).unwrap());
    assert_eq!(n.evaluate(&[0, 0, 1]).unwrap(), 1);
}

#[test]
fn v_zero_examples() {
    let a3 = engine(&ModuleDescriptor::perm(3, vec![vec![1, 2, 0]], Some(3)));
    let v0 = a3.v_zero().unwrap();
    assert_eq!(v0.len(), 2);
    let sum = Polynomial::linear(&f3(), &[1, 1, 1]);
    assert!(v0.iter().all(|v| sum.evaluate(v).unwrap() == 0));
    let w = engine(&ModuleDescriptor::w(2, 1, 3, 2, omega()));
    assert_eq!(w.v_zero().unwrap().len(), 2);
    let t =
        InvariantEngine::new(MatrixGroupRep::new(&f2(), 3, vec![("id".into(), MatrixFq::identity(&f2(), 3))]).unwrap());
    assert!(t.v_zero().unwrap().is_empty());
}

#[test]
fn terminal_divisibility_examples() {
    let e = engine(&ModuleDescriptor::sum(vec![ModuleDescriptor::jordan(2, 2, 3), ModuleDescriptor::jordan(2, 2, 2)]));
    let r = e.terminal_divisibility_check(4).unwrap();
    assert!(r.violations.is_empty() && r.monomials_checked > 0);
    let b = e.invariant_basis(4);
    for f in &b.basis {
        for (m, _) in f.terms() {
            if m.0[0] == 0 && m.0[1] == 0 && m.0[3] == 0 {
                assert_eq!(m.0[2] % 4, 0, "{m}");
                assert_eq!(m.0[4] % 2, 0, "{m}");
            }
        }
    }
    assert_eq!(e.terminal_divisibility_check(1).unwrap().monomials_checked, 0);
    let t = engine(&ModuleDescriptor::jordan(2, 1, 1));
    assert!(t.terminal_divisibility_check(1).unwrap().violations.is_empty());
}

// ---- oracle ----

#[test]
fn lucas_examples() {
    assert_eq!(lucas(6, 2, 3), 15 % 3);
    assert_eq!(lucas(17, 0, 7), 1);
    assert_eq!(lucas(5, 2, 2), 10 % 2);
}

#[test]
fn predictor_examples() {
    assert_eq!(predict_epsilon_cyclic(&[3, 2], &[0], 2).unwrap().value, 4);
    assert_eq!(predict_epsilon_cyclic(&[3, 2], &[0, 1], 2).unwrap().value, 2);
    assert_eq!(predict_epsilon_cyclic(&[1], &[0], 2).unwrap().value, 1);
    assert_eq!(predict_delta_cyclic_faithful(2, 2, &[4]).unwrap().value, 4);
    assert_eq!(predict_delta_cyclic_faithful(3, 2, &[4]).unwrap().value, 9);
    assert_eq!(predict_delta_cyclic_faithful(2, 1, &[2]).unwrap().value, 2);
    assert_eq!(predict_gamma_w(2, 1, 3, 2, 3).unwrap().value, 6);
    assert_eq!(predict_gamma_w(2, 1, 3, 1, 3).unwrap().value, 3);
    let sum = ModuleDescriptor::sum(vec![
        ModuleDescriptor::w(2, 1, 3, 2, Lambda::Coords(vec![1])),
        ModuleDescriptor::w(2, 1, 3, 1, omega()),
    ]);
    assert_eq!(predict_gamma_cyclic_sum(&sum, &f4()).unwrap().value, 3);
}

#[test]
fn klein_predictor_examples() {
    let k = ModuleDescriptor::klein;
    assert_eq!(predict_klein(&k(KleinVariant::V2m { m: 1, lambda: omega() }), &f4()).unwrap().value, 4);
    for m in 1..=3 {
        assert_eq!(predict_klein(&k(KleinVariant::WOdd { m }), &f2()).unwrap().value, 2);
    }
    assert_eq!(predict_klein(&k(KleinVariant::VOdd { m: 1 }), &f2()).unwrap().value, 4);
}

#[test]
fn pgroup_bound_examples() {
    let cl = |d: &ModuleDescriptor, f: &FieldSpec| close_group(&build(d, f).unwrap(), DEFAULT_GROUP_CAP).unwrap();
    let k = cl(&ModuleDescriptor::klein(KleinVariant::Regular), &f2());
    assert_eq!(pgroup_lower_bound(&k, 2).unwrap().value, 2);
    let d8 = cl(&dihedral_regular(2), &f2());
    let b = pgroup_lower_bound(&d8, 2).unwrap();
    assert_eq!((b.value, b.exact), (4, false));
    assert_eq!(center_exponent_bound(&d8, 2).unwrap().value, 2);
    let z9 = cl(&ModuleDescriptor::jordan(3, 2, 4), &f3());
    assert_eq!(pgroup_lower_bound(&z9, 3).unwrap().value, 9);
}

#[test]
fn classify_pm_examples() {
    let a3 = engine(&ModuleDescriptor::perm(3, vec![vec![1, 2, 0]], Some(3)));
    assert_eq!(classify_pm(&a3, None).unwrap().value, 3);
    let w = ModuleDescriptor::w(2, 1, 3, 1, omega());
    assert_eq!(classify_pm(&engine(&w), w.group_order()).unwrap().value, 0);
    for n in 1..=2 {
        let e = engine(&ModuleDescriptor::sym(ModuleDescriptor::Borel { p: 3 }, n));
        assert_eq!(classify_pm(&e, None).unwrap().value, 3);
    }
}

#[test]
fn verify_examples() {
    let opts = VerifyOptions::default();
    let r = verify(&ModuleDescriptor::jordan(2, 2, 4), &f2(), &[Target::delta()], &opts).unwrap();
    assert!(r.verdict.is_pass());
    assert_eq!(r.checks[0].computed, 4);
    let r = verify(&ModuleDescriptor::w(2, 1, 3, 2, omega()), &f4(), &[Target::gamma()], &opts).unwrap();
    assert!(r.verdict.is_pass());
    assert_eq!(r.checks[0].computed, 6);
    let k = ModuleDescriptor::klein(KleinVariant::V2m { m: 2, lambda: Lambda::Coords(vec![0]) });
    let ts = [Target::delta(), Target::gamma(), Target::new(TargetKind::KleinAbsence)];
    let r = verify(&k, &f2(), &ts, &opts).unwrap();
    assert!(r.verdict.is_pass());
    assert_eq!(r.checks.iter().map(|c| c.computed).collect::<Vec<_>>(), vec![4, 4, 0]);
}
