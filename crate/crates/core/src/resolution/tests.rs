use super::*;
use crate::complexes::Face;
use crate::field::{Field, Rationals};
use crate::monomial::{Monomial, TermOrder};
use crate::semigroup::{GeneratorMatrix, SDegree, Semigroup};
use num_rational::BigRational;

fn engine() -> Engine<Rationals> {
    let s = Semigroup::new(GeneratorMatrix::from_rows(&[&[4, 5, 7, 8], &[1, 1, 1, 1]]).unwrap()).unwrap();
    Engine::new(s, TermOrder::Degrevlex, Rationals)
}

fn mono(e: &[u32]) -> Monomial {
    Monomial::new(e.to_vec())
}

fn deg(m: &[i64]) -> SDegree {
    SDegree::from_i64s(m)
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn binomial(e: &Engine<Rationals>, lead: &[u32], trail: &[u32]) -> Binomial {
    Binomial::new(e.semigroup(), mono(lead), mono(trail)).unwrap()
}

fn value_binomial(e: &Engine<Rationals>, id: &GeneratorId) -> Binomial {
    let p = e.registry().get(id).unwrap().value.get(&Slot::Ring).unwrap();
    Binomial::from_polynomial(e.field(), p).unwrap()
}

#[test]
fn example_one_decomposition() {
    let mut e = engine();
    let g = binomial(&e, &[0, 2, 6, 0], &[3, 0, 0, 5]);
    let d = e.minimalize_binomial(&g).unwrap();
    let degrees: Vec<SDegree> = d.generators().map(|id| id.degree.clone()).collect();
    assert_eq!(degrees, vec![deg(&[12, 2]), deg(&[21, 3])]);
    let rebuilt = e.reconstruct(&d).unwrap();
    assert_eq!(rebuilt, ModuleElement::ring(g.to_polynomial(&Rationals)));
    let b12 = value_binomial(&e, &d.terms[0].0);
    assert_eq!((b12.lead(), b12.trail()), (&mono(&[0, 1, 1, 0]), &mono(&[1, 0, 0, 1])));
    let b21 = value_binomial(&e, &d.terms[1].0);
    assert_eq!((b21.lead(), b21.trail()), (&mono(&[0, 0, 3, 0]), &mono(&[0, 1, 0, 2])));
}

#[test]
fn generator_decomposes_to_itself() {
    let mut e = engine();
    let g = binomial(&e, &[0, 0, 3, 0], &[0, 1, 0, 2]);
    let d = e.minimalize_binomial(&g).unwrap();
    assert_eq!(d.terms.len(), 1);
    assert_eq!(d.terms[0].1, Polynomial::constant(&Rationals, 4, q(1)));
}

#[test]
fn square_of_generator_degree() {
    let mut e = engine();
    let g = binomial(&e, &[2, 0, 0, 2], &[0, 2, 2, 0]);
    let d = e.minimalize_binomial(&g).unwrap();
    assert_eq!(d.terms.len(), 1);
    assert_eq!(d.terms[0].0.degree, deg(&[12, 2]));
    let mut expected = Polynomial::term(&Rationals, mono(&[1, 0, 0, 1]), q(-1));
    expected.add_term(&Rationals, mono(&[0, 1, 1, 0]), q(-1));
    assert_eq!(d.terms[0].1, expected);
}

#[test]
fn rejects_bad_binomials() {
    let e = engine();
    assert!(Binomial::new(e.semigroup(), mono(&[1, 0, 0, 0]), mono(&[0, 1, 0, 0])).is_err());
    assert!(Binomial::new(e.semigroup(), mono(&[1, 0, 0, 0]), mono(&[1, 0, 0, 0])).is_err());
}

#[test]
fn psi_one_on_edge() {
    let mut e = engine();
    let m = deg(&[52, 8]);
    let k = e.nabla(&m);
    let a = k.vertex_index(&mono(&[0, 2, 6, 0])).unwrap();
    let b = k.vertex_index(&mono(&[0, 3, 3, 2])).unwrap();
    let v = e.psi(1, &m, &Face::new(vec![a, b])).unwrap();
    let terms: Vec<_> = v.terms().collect();
    assert_eq!(terms.len(), 1);
    let (slot, coef, c) = terms[0];
    let Slot::Gen(id) = slot else { panic!() };
    assert_eq!(id.degree, deg(&[21, 3]));
    assert_eq!(coef, &mono(&[0, 2, 3, 0]));
    assert_eq!(c, &q(-1));
    let c2 = k.vertex_index(&mono(&[3, 0, 0, 5])).unwrap();
    assert!(matches!(e.psi(1, &m, &Face::new(vec![a, c2])), Err(crate::Error::NotAFace)));
}

fn example_two_generators(e: &mut Engine<Rationals>) -> Vec<GeneratorId> {
    let pairs: [(&[u32], &[u32]); 4] = [
        (&[0, 1, 1, 0], &[1, 0, 0, 1]),
        (&[0, 0, 3, 0], &[0, 1, 0, 2]),
        (&[1, 0, 2, 0], &[0, 2, 0, 1]),
        (&[0, 3, 0, 0], &[2, 0, 1, 0]),
    ];
    pairs
        .iter()
        .map(|(l, t)| {
            let g = binomial(e, l, t);
            let d = e.minimalize_binomial(&g).unwrap();
            assert_eq!(d.terms.len(), 1);
            assert_eq!(d.terms[0].1, Polynomial::constant(&Rationals, 4, q(1)));
            d.terms[0].0.clone()
        })
        .collect()
}

fn poly(terms: &[(i64, &[u32])]) -> Polynomial<BigRational> {
    let mut p = Polynomial::zero();
    for (c, e) in terms {
        p.add_term(&Rationals, mono(e), q(*c));
    }
    p
}

#[test]
fn example_two_syzygy() {
    let mut e = engine();
    let b = example_two_generators(&mut e);
    let entries = [
        poly(&[(1, &[0, 1, 4, 0]), (1, &[1, 1, 0, 3])]),
        poly(&[(-1, &[0, 2, 2, 0]), (-1, &[2, 0, 0, 2])]),
        poly(&[(1, &[0, 1, 2, 1]), (1, &[1, 0, 1, 2])]),
    ];
    let mut g = ModuleElement::zero();
    for (id, p) in b.iter().zip(&entries) {
        g.add_assign(&Rationals, &ModuleElement::single(Slot::Gen(id.clone()), p.clone()));
    }
    let d = e.minimalize_syzygy(1, &g).unwrap();
    let mut degrees: Vec<_> = d.generators().map(|id| id.degree.clone()).collect();
    degrees.sort();
    assert_eq!(degrees, vec![deg(&[25, 4]), deg(&[26, 4])]);
    assert_eq!(e.reconstruct(&d).unwrap(), g);
    for (id, coef) in &d.terms {
        let expected = if id.degree == deg(&[26, 4]) { mono(&[0, 1, 2, 0]) } else { mono(&[1, 0, 0, 2]) };
        let ts: Vec<_> = coef.terms().collect();
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].0, &expected);
        let value = e.registry().get(id).unwrap().value.clone();
        assert!(e.apply_phi(&value).unwrap().is_zero());
    }
}

#[test]
fn harvest_sixty_ten() {
    let mut e = engine();
    let frag = e.harvest(&deg(&[60, 10]), 2).unwrap();
    assert_eq!(frag.ranks(), vec![4, 4, 1]);
    assert_eq!(frag.shape(), "R^1 -> R^4 -> R^4 -> R");
    let report = e.verify_fragment(&frag);
    assert!(report.passed(), "{report}");
    let b2 = &frag.levels[2][0];
    let mut coefs: Vec<Monomial> = b2.value.terms().map(|(_, m, _)| m.clone()).collect();
    coefs.sort();
    assert_eq!(coefs, vec![mono(&[0, 0, 0, 1]), mono(&[0, 0, 1, 0]), mono(&[0, 1, 0, 0]), mono(&[1, 0, 0, 0])]);
}

#[test]
fn corrupted_fragment_fails() {
    let mut e = engine();
    let mut frag = e.harvest(&deg(&[60, 10]), 1).unwrap();
    let rec = &mut frag.levels[1][0];
    let (slot, m, _) = rec.value.terms().next().map(|(s, m, c)| (s.clone(), m.clone(), c.clone())).unwrap();
    rec.value.add_term(&Rationals, slot, m, Rationals.one());
    assert!(!e.verify_fragment(&frag).passed());
}

#[test]
fn trivial_harvests() {
    let mut e = engine();
    let frag = e.harvest(&deg(&[1, 0]), 2).unwrap();
    assert!(frag.generators().next().is_none());
    assert!(e.verify_fragment(&frag).passed());
    let frag = e.harvest(&deg(&[4, 1]), 2).unwrap();
    assert!(frag.generators().next().is_none());
}

#[test]
fn betti_examples() {
    let mut e = engine();
    assert_eq!(e.multigraded_betti(&deg(&[12, 2]), 0), 1);
    assert_eq!(e.multigraded_betti(&deg(&[52, 8]), 0), 0);
    assert_eq!(e.multigraded_betti(&deg(&[21, 3]), 0), 1);
}
