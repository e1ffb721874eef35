//! Snake and bialgebra equations, checked extensionally in every backend, and
//! agreement of the two evaluators.

use quantal::term::{Backend, MorphismTerm as T, WireType::*, evaluate, evaluate_naive};
use quantal::vect::{DistModel, FeatureDef, SentenceSpace};
use quantal::{BooleanVectBackend, DistBackend, Morphism, Rational, RelBackend, RelModel, Universe};

fn id(w: quantal::WireType) -> T {
    T::id(&[w])
}

/// `(lhs, rhs)` pairs that must evaluate equally.
fn laws() -> Vec<(&'static str, T, T)> {
    let mut out = vec![
        ("Q1", T::Iota(W).after(T::Mu(W)), T::Iota(W).tensor(T::Iota(W))),
        ("Q2", T::Delta(W).after(T::Zeta(W)), T::Zeta(W).tensor(T::Zeta(W))),
        (
            "Q3",
            T::Delta(W).after(T::Mu(W)),
            T::Mu(W).tensor(T::Mu(W)).after(
                T::tensor_all([id(W), T::Swap(W, W), id(W)]).after(T::Delta(W).tensor(T::Delta(W))),
            ),
        ),
        ("Q4", T::Iota(W).after(T::Zeta(W)), T::id(&[])),
    ];
    for w in [W, S] {
        out.push((
            "snake-left",
            T::Epsilon(w).tensor(id(w)).after(id(w).tensor(T::Eta(w))),
            id(w),
        ));
        out.push((
            "snake-right",
            id(w).tensor(T::Epsilon(w)).after(T::Eta(w).tensor(id(w))),
            id(w),
        ));
    }
    out
}

fn check<B: Backend>(backend: &B, lexicon: &B::Lexicon, label: &str) {
    for (name, lhs, rhs) in laws() {
        let l = evaluate(&lhs, backend, lexicon).unwrap();
        let r = evaluate(&rhs, backend, lexicon).unwrap();
        assert_eq!(l, r, "{name} in {label}");
        assert_eq!(evaluate_naive(&lhs, backend, lexicon).unwrap(), l, "{name} naive in {label}");
        assert_eq!(evaluate_naive(&rhs, backend, lexicon).unwrap(), r, "{name} naive in {label}");
    }
}

#[test]
fn relations() {
    for n in 0..=3 {
        let u = Universe::anonymous(n).unwrap();
        check(&RelBackend::new(u.clone()), &RelModel::new(u), &format!("Rel |U|={n}"));
    }
}

#[test]
fn boolean_vector_spaces() {
    for n in 0..=3 {
        let u = Universe::anonymous(n).unwrap();
        let m = RelModel::new(u.clone());
        check(&BooleanVectBackend::<f64>::new(u.clone()), &m, &format!("FdVect<f64> |U|={n}"));
        check(&BooleanVectBackend::<Rational>::new(u.clone()), &m, &format!("FdVect<Q> |U|={n}"));
        check(&BooleanVectBackend::<f32>::new(u), &m, &format!("FdVect<f32> |U|={n}"));
    }
}

#[test]
fn distributional_spaces() {
    for n in 0..=3 {
        for space in [SentenceSpace::Scalar, SentenceSpace::Indexed(vec!["s1".into(), "s2".into()])] {
            let features = (0..n)
                .map(|i| FeatureDef { name: format!("f{i}"), tokens: vec![format!("t{i}")] })
                .collect();
            let m = DistModel::<f64>::new(features, space.clone()).unwrap();
            check(&DistBackend::for_model(&m), &m, &format!("dist |Σ|={n} {space:?}"));
        }
    }
}

// The endpoint of the hand derivation of Q3 on basis vectors: |A∩B⟩ ⊗ |A∩B⟩.
#[test]
fn q3_on_basis_vectors() {
    let u = Universe::anonymous(2).unwrap();
    let b = BooleanVectBackend::<f64>::new(u.clone());
    let m = RelModel::new(u);
    let (_, q3_lhs, q3_rhs) = laws().remove(2);
    for a in 0..4u32 {
        for c in 0..4u32 {
            let input = Morphism::state(vec![W, W], [(smallvec(&[a, c]), 1.0)]);
            for term in [&q3_lhs, &q3_rhs] {
                let f = evaluate(term, &b, &m).unwrap();
                let out = b.compose(&f, &input).unwrap();
                let image: Vec<_> = out.entries().map(|(_, t, w)| (t.to_vec(), *w)).collect();
                assert_eq!(image, vec![(vec![a & c, a & c], 1.0)]);
            }
        }
    }
}

fn smallvec(x: &[u32]) -> quantal::morphism::Tuple {
    quantal::morphism::Tuple::from_slice(x)
}

#[test]
fn composition_laws_on_random_relations() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
    for n in 0..=3 {
        let u = Universe::anonymous(n).unwrap();
        let b = RelBackend::new(u.clone());
        let size = u.powerset_size() as u32;
        let mut random = || {
            let mut r = Morphism::zero(vec![W], vec![W]);
            for x in 0..size {
                for y in 0..size {
                    if rng.gen_bool(0.3) {
                        r.add(smallvec(&[x]), smallvec(&[y]), quantal::Boolean(true));
                    }
                }
            }
            r
        };
        for _ in 0..10 {
            let (f, g, h) = (random(), random(), random());
            let left = b.compose(&h, &b.compose(&g, &f).unwrap()).unwrap();
            let right = b.compose(&b.compose(&h, &g).unwrap(), &f).unwrap();
            assert_eq!(left, right);
            let id = b.identity(&[W]);
            assert_eq!(b.compose(&f, &id).unwrap(), f);
            assert_eq!(b.compose(&id, &f).unwrap(), f);
        }
    }
}

#[test]
fn evaluators_agree_on_sentences() {
    use quantal::grammar::Shape;
    use quantal::oracle::Relation;
    use quantal::term::compile_shape;
    use quantal::{Quantifier, SubsetId};

    let u = Universe::anonymous(2).unwrap();
    let mut m = RelModel::new(u.clone());
    m.sets.insert("a".into(), SubsetId(0b01));
    m.sets.insert("b".into(), SubsetId(0b11));
    m.sets.insert("c".into(), SubsetId(0b10));
    m.verbs.insert("v".into(), Relation::from_pairs(2, [(0, 1), (1, 1)]));
    m.dets.insert("d".into(), Quantifier::Most);
    m.dets.insert("e".into(), Quantifier::AtLeastN(1));
    let rel = RelBackend::new(u.clone());
    let vect = BooleanVectBackend::<f64>::new(u);
    let cases: [(Shape, &[&str]); 6] = [
        (Shape::NpVp, &["a", "c"]),
        (Shape::DetNVp, &["d", "b", "a"]),
        (Shape::NpVNp, &["a", "v", "c"]),
        (Shape::NpVDetN, &["b", "v", "e", "b"]),
        (Shape::DetNVDetN, &["d", "b", "v", "e", "c"]),
        (Shape::DetN, &["e", "b"]),
    ];
    for (shape, words) in cases {
        let term = compile_shape(shape, words).unwrap();
        assert_eq!(evaluate(&term, &rel, &m).unwrap(), evaluate_naive(&term, &rel, &m).unwrap(), "{shape}");
        assert_eq!(evaluate(&term, &vect, &m).unwrap(), evaluate_naive(&term, &vect, &m).unwrap(), "{shape}");
    }
}

#[test]
fn evaluation_errors_name_the_subterm() {
    let u = Universe::anonymous(1).unwrap();
    let m = RelModel::new(u.clone());
    let term = T::Epsilon(W).after(T::word("ghost", &[W]).tensor(T::word("ghost", &[W])));
    let err = evaluate(&term, &RelBackend::new(u), &m).unwrap_err().to_string();
    assert!(err.contains("$.before.right") && err.contains("ghost"), "{err}");
}
