use crate::arith::{big_mod, ext_gcd, gcd, lcm, mod_pow_signed};
use crate::groups::{FinAbElement, Group, SampleGroup};
use crate::{Error, FinAbDesc, HeisenbergDesc, HeisenbergElement, MetacyclicDesc, MetacyclicElement, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;
use std::sync::Arc;

type Eval2<E> = Arc<dyn Fn(&E, &E) -> u64 + Send + Sync>;
type Eval1<E> = Arc<dyn Fn(&E) -> u64 + Send + Sync>;

/// A 2-cocycle on an infinite group given by a closed formula for its exponent mod `N`.
pub struct ClosedCocycle<G: Group> {
    pub group: G,
    pub modulus: u64,
    pub label: String,
    eval: Eval2<G::Elem>,
}

impl<G: Group + Clone> Clone for ClosedCocycle<G> {
    fn clone(&self) -> Self {
        ClosedCocycle {
            group: self.group.clone(),
            modulus: self.modulus,
            label: self.label.clone(),
            eval: self.eval.clone(),
        }
    }
}

impl<G: Group + Clone> ClosedCocycle<G> {
    pub fn new<F>(group: G, modulus: u64, label: impl Into<String>, f: F) -> Result<Self>
    where
        F: Fn(&G::Elem, &G::Elem) -> u64 + Send + Sync + 'static,
    {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        Ok(ClosedCocycle {
            group,
            modulus,
            label: label.into(),
            eval: Arc::new(f),
        })
    }

    /// Exponent of `α(x, y)` in `Z/N`.
    pub fn exp(&self, x: &G::Elem, y: &G::Elem) -> u64 {
        (self.eval)(x, y) % self.modulus
    }

    /// The first of `samples` random triples on which the cocycle identity fails.
    pub fn violation_sampled<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        samples: usize,
        bound: i64,
    ) -> Option<(G::Elem, G::Elem, G::Elem)>
    where
        G: SampleGroup,
    {
        let g = &self.group;
        let m = self.modulus;
        for _ in 0..samples {
            let (x, y, z) = (g.sample(rng, bound), g.sample(rng, bound), g.sample(rng, bound));
            let lhs = (self.exp(&x, &y) + self.exp(&g.mul(&x, &y), &z)) % m;
            let rhs = (self.exp(&x, &g.mul(&y, &z)) + self.exp(&y, &z)) % m;
            if lhs != rhs {
                return Some((x, y, z));
            }
        }
        None
    }

    pub fn is_cocycle_sampled<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize, bound: i64) -> bool
    where
        G: SampleGroup,
    {
        self.violation_sampled(rng, samples, bound).is_none()
    }

    /// `α(1, g) = α(g, 1) = 1` on sampled `g`.
    pub fn is_normalized_sampled<R: Rng + ?Sized>(&self, rng: &mut R, samples: usize, bound: i64) -> bool
    where
        G: SampleGroup,
    {
        let e = self.group.identity();
        (0..samples).all(|_| {
            let g = self.group.sample(rng, bound);
            self.exp(&e, &g) == 0 && self.exp(&g, &e) == 0
        })
    }

    pub fn pow(&self, k: u64) -> ClosedCocycle<G>
    where
        G::Elem: 'static,
    {
        let inner = self.eval.clone();
        let m = self.modulus;
        ClosedCocycle {
            group: self.group.clone(),
            modulus: m,
            label: format!("({})^{k}", self.label),
            eval: Arc::new(move |x, y| ((inner(x, y) % m) as u128 * k as u128 % m as u128) as u64),
        }
    }

    /// Same cocycle written over a multiple `target` of the modulus.
    pub fn lift(&self, target: u64) -> ClosedCocycle<G>
    where
        G::Elem: 'static,
    {
        assert!(target % self.modulus == 0, "target must be a multiple of the modulus");
        let inner = self.eval.clone();
        let (m, f) = (self.modulus, target / self.modulus);
        ClosedCocycle {
            group: self.group.clone(),
            modulus: target,
            label: self.label.clone(),
            eval: Arc::new(move |x, y| (inner(x, y) % m) * f),
        }
    }

    /// Pulls the cocycle back along a homomorphism `h: H → G`, e.g. a subgroup embedding.
    pub fn pull_back<H, F>(&self, sub: H, embed: F, label: impl Into<String>) -> ClosedCocycle<H>
    where
        H: Group + Clone,
        F: Fn(&H::Elem) -> G::Elem + Send + Sync + 'static,
        G::Elem: 'static,
    {
        let inner = self.eval.clone();
        ClosedCocycle {
            group: sub,
            modulus: self.modulus,
            label: label.into(),
            eval: Arc::new(move |x, y| inner(&embed(x), &embed(y))),
        }
    }

    /// First sampled pair where `self` and `other` differ as roots of unity.
    pub fn disagreement_sampled<R: Rng + ?Sized>(
        &self,
        other: &ClosedCocycle<G>,
        rng: &mut R,
        samples: usize,
        bound: i64,
    ) -> Option<(G::Elem, G::Elem)>
    where
        G: SampleGroup,
    {
        let m = lcm(self.modulus, other.modulus);
        let (fa, fb) = (m / self.modulus, m / other.modulus);
        for _ in 0..samples {
            let x = self.group.sample(rng, bound);
            let y = self.group.sample(rng, bound);
            if self.exp(&x, &y) * fa % m != other.exp(&x, &y) * fb % m {
                return Some((x, y));
            }
        }
        None
    }
}

/// A 1-cochain `μ: G → μ_N` on an infinite group given by a formula.
pub struct ClosedCochain<G: Group> {
    pub group: G,
    pub modulus: u64,
    eval: Eval1<G::Elem>,
}

impl<G: Group + Clone> ClosedCochain<G> {
    pub fn new<F>(group: G, modulus: u64, f: F) -> Result<Self>
    where
        F: Fn(&G::Elem) -> u64 + Send + Sync + 'static,
    {
        if modulus == 0 {
            return Err(Error::invalid("modulus must be positive"));
        }
        if f(&group.identity()) % modulus != 0 {
            return Err(Error::invalid("a cochain must send the identity to 1"));
        }
        Ok(ClosedCochain {
            group,
            modulus,
            eval: Arc::new(f),
        })
    }

    pub fn exp(&self, g: &G::Elem) -> u64 {
        (self.eval)(g) % self.modulus
    }
}

/// `δμ(x, y) = μ(x)^{-1} μ(y)^{-1} μ(xy)` as a closed formula.
pub fn closed_coboundary<G>(mu: &ClosedCochain<G>) -> ClosedCocycle<G>
where
    G: Group + Clone + Send + Sync + 'static,
{
    let inner = mu.eval.clone();
    let g = mu.group.clone();
    let m = mu.modulus;
    ClosedCocycle {
        group: mu.group.clone(),
        modulus: m,
        label: "coboundary".into(),
        eval: Arc::new(move |x, y| {
            (inner(&g.mul(x, y)) % m + 2 * m - inner(x) % m - inner(y) % m) % m
        }),
    }
}

/// `t = gcd(m, r - 1)` and the Bezout coefficient `y` of `x m + y (r - 1) = t` of least
/// absolute value, ties resolved towards the positive one.
pub fn metacyclic_bezout(m: u64, r: u64) -> (u64, i64) {
    let t = gcd(m, r - 1);
    if r == 1 {
        return (t, 0);
    }
    let (_, _, y0) = ext_gcd(m as i128, (r - 1) as i128);
    let step = (m / t) as i128;
    let mut y = y0.rem_euclid(step);
    if 2 * y > step {
        y -= step;
    }
    (t, y as i64)
}

/// `w(j) = (r^j - 1)/t mod t`, computed from `r^j mod t^2`.
fn w_mod_t(r: u64, t: u64, j: &BigInt) -> u64 {
    if t == 1 {
        return 0;
    }
    let t2 = t * t;
    let rj = mod_pow_signed(r, j, t2).expect("gcd(r, t) = 1 since t divides r - 1");
    ((rj + t2 - 1) % t2) / t
}

/// `α(a^i b^j, a^{i1} b^{j1}) = λ^{i1 y (r^j - 1)/t}` on `G(m, 0, r)` with `λ = ζ_t^{λ_exp}`.
pub fn metacyclic_cocycle(m: u64, r: u64, lambda_exp: u64) -> Result<ClosedCocycle<MetacyclicDesc>> {
    if m == 0 {
        return Err(Error::invalid("the closed form needs m > 0"));
    }
    let desc = MetacyclicDesc::new(m, 0, r)?;
    let (t, y) = metacyclic_bezout(m, r);
    if lambda_exp >= t {
        return Err(Error::invalid(format!("lambda_exp {lambda_exp} is not reduced mod t = {t}")));
    }
    let y_mod = y.rem_euclid(t as i64) as u64;
    ClosedCocycle::new(
        desc,
        t,
        format!("metacyclic(m={m}, r={r}, lambda_exp={lambda_exp})"),
        move |p: &MetacyclicElement, q: &MetacyclicElement| {
            let i1 = big_mod(&q.i, t);
            let w = w_mod_t(r, t, &p.j);
            lambda_exp * i1 % t * y_mod % t * w % t
        },
    )
}

/// The two-parameter cocycle on `(Z/n × Z) ⋊ Z`, elements `(m, n', p)` stored as
/// `(a, [b], [c])`, with `λ = ζ_n^{lambda_exp}` and `μ = ζ_n^{mu_exp}`:
/// `λ^{m_2 p_1 + n_2 p_1 (p_1 - 1)/2} μ^{n_1 m_2 + p_1 n_2 (n_2 - 1)/2 + p_1 n_1 n_2}`.
pub fn example1_cocycle(n: u64, lambda_exp: u64, mu_exp: u64) -> Result<ClosedCocycle<HeisenbergDesc>> {
    let desc = HeisenbergDesc::example1(n)?;
    let (l, u) = (BigInt::from(lambda_exp % n), BigInt::from(mu_exp % n));
    ClosedCocycle::new(
        desc,
        n,
        format!("example1(n={n}, lambda_exp={lambda_exp}, mu_exp={mu_exp})"),
        move |x: &HeisenbergElement, y: &HeisenbergElement| {
            let (m2, n1, n2, p1) = (&y.a, &x.b[0], &y.b[0], &x.c[0]);
            let one = BigInt::from(1);
            let tri = |k: &BigInt| (k * (k - &one)).div_floor(&BigInt::from(2));
            let el = m2 * p1 + n2 * tri(p1);
            let eu = n1 * m2 + p1 * tri(n2) + p1 * n1 * n2;
            big_mod(&(&l * el + &u * eu), n)
        },
    )
}

/// Order of the class of a cocycle on a finitely generated abelian group.
///
/// `α ↦ α(x, y) α(y, x)^{-1}` identifies `H^2(A, C^×)` with alternating bicharacters, so the
/// class order is the lcm of the orders of the commutator values on pairs of generators.
pub fn abelian_class_order(alpha: &ClosedCocycle<FinAbDesc>) -> u64 {
    let k = alpha.group.len();
    let m = alpha.modulus;
    let unit = |i: usize| {
        let mut v = vec![0i64; k];
        v[i] = 1;
        FinAbElement(v)
    };
    let mut order = 1;
    for i in 0..k {
        for j in i + 1..k {
            let (x, y) = (unit(i), unit(j));
            let d = (alpha.exp(&x, &y) + m - alpha.exp(&y, &x)) % m;
            order = lcm(order, m / gcd(d, m));
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn bezout_choice() {
        assert_eq!(metacyclic_bezout(8, 3), (2, 1));
        assert_eq!(metacyclic_bezout(7, 8), (7, 0));
        let (t, y) = metacyclic_bezout(12, 7);
        assert_eq!(t, 6);
        assert_eq!((12 * ((t as i64 - y * 6) / 12) + y * 6) as u64, t);
    }

    #[test]
    fn metacyclic_value_and_identity() {
        let a = metacyclic_cocycle(8, 3, 1).unwrap();
        let b = MetacyclicElement::new(0, 1);
        let x = MetacyclicElement::new(1, 0);
        assert_eq!(a.exp(&b, &x), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(a.is_cocycle_sampled(&mut rng, 2000, 1_000_000));
        assert!(a.is_normalized_sampled(&mut rng, 200, 1_000_000));
        assert!(metacyclic_cocycle(8, 3, 2).is_err());
    }

    #[test]
    fn example1_value_and_identity() {
        let s = example1_cocycle(4, 1, 0).unwrap();
        let x = HeisenbergElement::new(0, &[0], &[1]);
        let y = HeisenbergElement::new(1, &[0], &[0]);
        assert_eq!(s.exp(&x, &y), 1);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let s = example1_cocycle(6, 5, 2).unwrap();
        assert!(s.is_cocycle_sampled(&mut rng, 2000, 1_000_000));
        assert!(s.is_normalized_sampled(&mut rng, 200, 1_000_000));
    }

    #[test]
    fn closed_coboundary_is_cocycle() {
        let g = MetacyclicDesc::new(9, 0, 4).unwrap();
        let mu = ClosedCochain::new(g, 9, |e: &MetacyclicElement| {
            big_mod(&(&e.i * 2 + &e.j * &e.j), 9)
        })
        .unwrap();
        let d = closed_coboundary(&mu);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert!(d.is_cocycle_sampled(&mut rng, 1000, 1_000_000));
    }

    #[test]
    fn abelian_orders() {
        let z2 = FinAbDesc::new(&[0, 0]);
        let sigma = ClosedCocycle::new(z2.clone(), 6, "bilinear", |x: &FinAbElement, y: &FinAbElement| {
            (x.0[0] * y.0[1]).rem_euclid(6) as u64
        })
        .unwrap();
        assert_eq!(abelian_class_order(&sigma), 6);
        let sym = ClosedCocycle::new(z2, 6, "symmetric", |x: &FinAbElement, y: &FinAbElement| {
            (x.0[0] * y.0[0]).rem_euclid(6) as u64
        })
        .unwrap();
        assert_eq!(abelian_class_order(&sym), 1);
    }
}
