use lcsq_core::lcs::{check_b2_identity, fermat, LcsCache};
use lcsq_core::ncpoly::{parse, AlgebraPresentation, Mode, NCPoly, Word};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn q(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn random_homogeneous(rng: &mut ChaCha8Rng, n: usize, deg: usize) -> NCPoly {
    loop {
        let terms = (0..rng.gen_range(1..=3)).map(|_| {
            let w: Vec<u8> = (0..deg).map(|_| rng.gen_range(0..n as u8)).collect();
            (Word::new(w), q(rng.gen_range(-3..=3), 1))
        });
        let p = NCPoly::from_terms(n, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

fn br(a: &NCPoly, b: &NCPoly) -> NCPoly {
    a.bracket(b).unwrap()
}

fn mul(ps: &[&NCPoly]) -> NCPoly {
    let n = ps[0].n();
    ps.iter().fold(NCPoly::one(n), |acc, p| acc.nc_mul(p).unwrap())
}

fn relations(rng: &mut ChaCha8Rng) -> Vec<AlgebraPresentation> {
    vec![
        fermat(3, 2).unwrap(),
        fermat(3, 3).unwrap(),
        AlgebraPresentation::parse("x^2+y^2+z^2", 3, Mode::Graded).unwrap(),
        AlgebraPresentation::random_generic(3, 2, Mode::Graded, rng).unwrap(),
    ]
}

/// `[Q, q_1 ... q_k] = Σ_i [q_{i+1} ... q_k Q q_1 ... q_{i-1}, q_i]`.
fn cyclic_sides(big_q: &NCPoly, qs: &[NCPoly]) -> (NCPoly, NCPoly) {
    let refs: Vec<&NCPoly> = qs.iter().collect();
    let lhs = br(big_q, &mul(&refs));
    let mut rhs = NCPoly::zero(big_q.n());
    for i in 0..qs.len() {
        let mut word: Vec<&NCPoly> = refs[i + 1..].to_vec();
        word.push(big_q);
        word.extend_from_slice(&refs[..i]);
        rhs = rhs.add(&br(&mul(&word), &qs[i])).unwrap();
    }
    (lhs, rhs)
}

#[test]
fn lemma_relations_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut checked = 0;
    for pres in relations(&mut rng) {
        let mut cache = LcsCache::new(&pres).unwrap();
        let mut holds = |lhs: &NCPoly, rhs: &NCPoly| cache.in_lcs_plus_ideal(3, &lhs.sub(rhs).unwrap()).unwrap();
        for _ in 0..3 {
            let big_q = random_homogeneous(&mut rng, 3, 1);
            let degs: Vec<usize> = (0..rng.gen_range(2..=3)).map(|_| rng.gen_range(1..=2)).collect();
            let qs: Vec<NCPoly> = degs.iter().map(|&k| random_homogeneous(&mut rng, 3, k)).collect();
            let (lhs, rhs) = cyclic_sides(&big_q, &qs);
            assert!(holds(&lhs, &rhs));

            let (a, b, c) = (random_homogeneous(&mut rng, 3, 1), random_homogeneous(&mut rng, 3, 2), random_homogeneous(&mut rng, 3, 1));
            assert!(holds(&br(&a.nc_mul(&b).unwrap(), &c), &br(&b.nc_mul(&a).unwrap(), &c)));

            let (l, k) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let a = random_homogeneous(&mut rng, 3, 1);
            let b = random_homogeneous(&mut rng, 3, 1);
            let lhs = br(&a.pow(l).unwrap().nc_mul(&b).unwrap(), &a.pow(k).unwrap());
            let rhs = br(&b, &a.pow(l + k).unwrap()).scale(&q(k as i64, (l + k) as i64));
            assert!(holds(&lhs, &rhs));
            // a wrong coefficient is rejected unless both sides vanish
            if !holds(&rhs, &NCPoly::zero(3)) {
                assert!(!holds(&lhs, &rhs.scale(&q(2, 1))));
            }
            checked += 3;
        }
    }
    assert!(checked >= 20);
}

#[test]
fn bracket_relation_examples() {
    let pres = fermat(3, 2).unwrap();
    let p = |s: &str| parse(s, 3).unwrap();
    assert!(check_b2_identity(&pres, &br(&p("xy"), &p("z")), &br(&p("yx"), &p("z"))).unwrap());
    for (l, k) in [(1, 1), (1, 2), (2, 1), (2, 3)] {
        let lhs = br(&p(&format!("x^{l} y")), &p(&format!("x^{k}")));
        let rhs = br(&p("y"), &p(&format!("x^{}", l + k))).scale(&q(k, l + k));
        assert!(check_b2_identity(&pres, &lhs, &rhs).unwrap(), "l={l} k={k}");
    }
}

/// `[x^{i+d} y^j, a]`, `[x^{i+d} a, y^j]`, `[a y^j, x^{i+d}]` in `A_3`.
fn three_terms(d: usize, i: usize, j: usize, a: &NCPoly) -> [NCPoly; 3] {
    let x = parse(&format!("x^{}", i + d), 3).unwrap();
    let y = parse(&format!("y^{j}"), 3).unwrap();
    [br(&x.nc_mul(&y).unwrap(), a), br(&x.nc_mul(a).unwrap(), &y), br(&a.nc_mul(&y).unwrap(), &x)]
}

const ELEMENTS: [&str; 3] = ["z", "z^2", "y z"];
const EXPONENTS: [(usize, usize); 3] = [(0, 1), (1, 1), (0, 2)];

#[test]
fn three_term_sum_vanishes() {
    for d in [2, 3] {
        let mut cache = LcsCache::new(&fermat(3, d).unwrap()).unwrap();
        for a in ELEMENTS {
            let a = parse(a, 3).unwrap();
            for (i, j) in EXPONENTS {
                let [t1, t2, t3] = three_terms(d, i, j, &a);
                let sum = t1.add(&t2).unwrap().add(&t3).unwrap();
                assert!(cache.in_lcs_plus_ideal(3, &sum).unwrap(), "d={d} a={a} i={i} j={j}");
            }
        }
    }
}

/// With `α = j/(j+d)` and `β = i/(i+d)`, the two relations
/// `A + B + C = 0` and `B = -αA - αβC` give `B = -α(1-β)/(1-αβ) A`.
#[test]
fn three_terms_collapse_to_one() {
    for d in [2, 3] {
        let mut cache = LcsCache::new(&fermat(3, d).unwrap()).unwrap();
        for a in ELEMENTS {
            let a = parse(a, 3).unwrap();
            for (i, j) in EXPONENTS {
                let alpha = q(j as i64, (j + d) as i64);
                let beta = q(i as i64, (i + d) as i64);
                let one = BigRational::one();
                let coeff_b = -(&alpha * (&one - &beta)) / (&one - &alpha * &beta);
                let coeff_c = -(&one + &coeff_b);
                let [ta, tb, tc] = three_terms(d, i, j, &a);
                let mut holds = |lhs: &NCPoly, rhs: &NCPoly| cache.in_lcs_plus_ideal(3, &lhs.sub(rhs).unwrap()).unwrap();
                assert!(holds(&tb, &ta.scale(&coeff_b)), "d={d} a={a} i={i} j={j}");
                assert!(holds(&tc, &ta.scale(&coeff_c)), "d={d} a={a} i={i} j={j}");
                assert!(!coeff_b.is_zero());
            }
        }
    }
}

#[test]
fn large_powers_vanish_in_two_generators() {
    for d in [2, 3] {
        let mut cache = LcsCache::new(&fermat(2, d).unwrap()).unwrap();
        for i in 1..=d + 1 {
            for j in 1..=d + 1 {
                let c = br(&parse(&format!("x^{i}"), 2).unwrap(), &parse(&format!("y^{j}"), 2).unwrap());
                let zero = cache.in_lcs_plus_ideal(3, &c).unwrap();
                assert_eq!(zero, i >= d || j >= d, "d={d} i={i} j={j}");
            }
        }
    }
}
