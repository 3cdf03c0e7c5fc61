//! Dense univariate factorization over ℤ.
//!
//! This is the engine under the multivariate front end: Yun's square-free
//! decomposition, deterministic Berlekamp factorization modulo a small prime,
//! quadratic ("Hensel") lifting along a balanced factor tree, and Zassenhaus
//! subset recombination against a Mignotte-style coefficient bound. Every
//! division is exact; there are no modular reconstructions left unverified —
//! candidates from recombination are accepted only when they divide over ℤ.
//!
//! Inputs at desk scale (degrees in the hundreds at most, after Kronecker
//! substitution) keep all of this comfortably fast; nothing here tries to be
//! clever beyond that.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Combinations;

/// Dense polynomial over ℤ: `c[i]` is the coefficient of `T^i`, the top
/// coefficient is nonzero, and zero is the empty vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct ZPoly {
    c: Vec<BigInt>,
}

impl ZPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        ZPoly { c }
    }

    pub fn zero() -> Self {
        ZPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        ZPoly {
            c: vec![BigInt::one()],
        }
    }

    /// `coeff * T^k`.
    pub fn monomial(k: usize, coeff: BigInt) -> Self {
        if coeff.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = coeff;
        ZPoly { c }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; only meaningful for nonzero polynomials.
    pub fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.c.len() - 1
    }

    pub fn lc(&self) -> &BigInt {
        self.c.last().expect("lc of zero polynomial")
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn add(&self, other: &ZPoly) -> ZPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) + other.coeff(i));
        }
        ZPoly::new(c)
    }

    pub fn sub(&self, other: &ZPoly) -> ZPoly {
        let n = self.c.len().max(other.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(self.coeff(i) - other.coeff(i));
        }
        ZPoly::new(c)
    }

    pub fn neg(&self) -> ZPoly {
        ZPoly {
            c: self.c.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &ZPoly) -> ZPoly {
        if self.is_zero() || other.is_zero() {
            return ZPoly::zero();
        }
        let mut c = vec![BigInt::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        ZPoly::new(c)
    }

    pub fn scale(&self, k: &BigInt) -> ZPoly {
        if k.is_zero() {
            return ZPoly::zero();
        }
        ZPoly {
            c: self.c.iter().map(|x| x * k).collect(),
        }
    }

    pub fn derivative(&self) -> ZPoly {
        if self.c.len() <= 1 {
            return ZPoly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, x)| x * BigInt::from(i))
            .collect();
        ZPoly::new(c)
    }

    /// Positive gcd of the coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for x in &self.c {
            g = g.gcd(x);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide out the content, keeping the sign of the leading coefficient.
    pub fn primitive(&self) -> ZPoly {
        let g = self.content();
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        ZPoly {
            c: self.c.iter().map(|x| x / &g).collect(),
        }
    }

    /// Primitive with positive leading coefficient.
    pub fn primitive_pos(&self) -> ZPoly {
        let p = self.primitive();
        if !p.is_zero() && p.lc().is_negative() {
            p.neg()
        } else {
            p
        }
    }

    /// Exact division over ℤ; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &ZPoly) -> Option<ZPoly> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(ZPoly::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let mut rem = self.clone();
        let mut q = vec![BigInt::zero(); self.deg() - d.deg() + 1];
        while !rem.is_zero() && rem.deg() >= d.deg() {
            let (qc, r) = rem.lc().div_rem(d.lc());
            if !r.is_zero() {
                return None;
            }
            let shift = rem.deg() - d.deg();
            q[shift] = qc.clone();
            rem = rem.sub(&d.mul(&ZPoly::monomial(shift, qc)));
        }
        if rem.is_zero() {
            Some(ZPoly::new(q))
        } else {
            None
        }
    }

    /// Pseudo-remainder of `self` by `d` in the sense of a power of `lc(d)`
    /// times the true remainder. The exact power is irrelevant to the callers
    /// here (they strip content right after), so none is promised.
    pub fn pseudo_rem(&self, d: &ZPoly) -> ZPoly {
        let mut r = self.clone();
        let dd = d.deg();
        while !r.is_zero() && r.deg() >= dd {
            let shift = r.deg() - dd;
            let lr = r.lc().clone();
            r = r.scale(d.lc()).sub(&d.mul(&ZPoly::monomial(shift, lr)));
        }
        r
    }

    /// Primitive positive-lc gcd via the primitive pseudo-remainder sequence.
    pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
        if a.is_zero() {
            return b.primitive_pos();
        }
        if b.is_zero() {
            return a.primitive_pos();
        }
        let (mut p, mut q) = if a.deg() >= b.deg() {
            (a.primitive_pos(), b.primitive_pos())
        } else {
            (b.primitive_pos(), a.primitive_pos())
        };
        let content = a.content().gcd(&b.content());
        loop {
            let r = p.pseudo_rem(&q);
            if r.is_zero() {
                break;
            }
            if r.is_constant() {
                q = ZPoly::one();
                break;
            }
            p = q;
            q = r.primitive_pos();
        }
        // gcd of the contents times the primitive gcd.
        q.scale(&content)
    }

    fn squared_l2(&self) -> BigInt {
        self.c.iter().map(|x| x * x).sum()
    }
}

/// Yun's algorithm: `f` primitive nonconstant with positive leading
/// coefficient; returns `(a_k, k)` with `f = ∏ a_k^k`, each `a_k` square-free,
/// primitive, positive-lc, nonconstant, and pairwise coprime.
pub(crate) fn squarefree_decomposition(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    debug_assert!(!f.is_constant() && f.lc().is_positive());
    let df = f.derivative();
    let g = ZPoly::gcd(f, &df);
    if g.is_constant() {
        return vec![(f.clone(), 1)];
    }
    let mut out = Vec::new();
    // All these divisions are exact by Gauss's lemma: g is primitive and
    // divides both over ℚ, hence over ℤ.
    let mut b = f.div_exact(&g).expect("yun: g | f");
    let mut c = df.div_exact(&g).expect("yun: g | f'");
    let mut d = c.sub(&b.derivative());
    let mut k = 1u32;
    loop {
        let a = ZPoly::gcd(&b, &d);
        if !a.is_constant() {
            out.push((a.clone(), k));
        }
        b = b.div_exact(&a).expect("yun: a | b");
        if b.is_constant() {
            // b carries f's positive lc down the iterations, so it ends at 1.
            debug_assert!(b.coeff(0).is_one());
            break;
        }
        c = d.div_exact(&a).expect("yun: a | d");
        d = c.sub(&b.derivative());
        k += 1;
    }
    out
}

// ---------------------------------------------------------------------------
// Arithmetic modulo a small prime.
// ---------------------------------------------------------------------------

/// Dense polynomial over F_p; the prime travels alongside as a plain `u64`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) struct PPoly {
    c: Vec<u64>,
}

fn mulp(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn invp(a: u64, p: u64) -> u64 {
    // Extended Euclid on signed 128-bit; p is prime and a != 0 mod p.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of a noninvertible element");
    t0.rem_euclid(p as i128) as u64
}

impl PPoly {
    fn new(mut c: Vec<u64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        PPoly { c }
    }

    fn zero() -> Self {
        PPoly { c: Vec::new() }
    }

    pub fn from_z(f: &ZPoly, p: u64) -> Self {
        let pb = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|x| {
                let m = x.mod_floor(&pb);
                // mod_floor of a BigInt by a positive modulus fits in u64
                // whenever p does.
                u64::try_from(m).expect("residue fits")
            })
            .collect();
        PPoly::new(c)
    }

    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    fn deg(&self) -> usize {
        debug_assert!(!self.is_zero());
        self.c.len() - 1
    }

    fn lc(&self) -> u64 {
        *self.c.last().expect("lc of zero")
    }

    fn coeff(&self, i: usize) -> u64 {
        self.c.get(i).copied().unwrap_or(0)
    }

    fn sub(&self, other: &PPoly, p: u64) -> PPoly {
        let n = self.c.len().max(other.c.len());
        let c = (0..n)
            .map(|i| (self.coeff(i) + p - other.coeff(i)) % p)
            .collect();
        PPoly::new(c)
    }

    fn mul(&self, other: &PPoly, p: u64) -> PPoly {
        if self.is_zero() || other.is_zero() {
            return PPoly::zero();
        }
        let mut c = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                if b != 0 {
                    c[i + j] = (c[i + j] + mulp(a, b, p)) % p;
                }
            }
        }
        PPoly::new(c)
    }

    fn scale(&self, k: u64, p: u64) -> PPoly {
        PPoly::new(self.c.iter().map(|&x| mulp(x, k, p)).collect())
    }

    fn make_monic(&self, p: u64) -> PPoly {
        if self.is_zero() || self.lc() == 1 {
            return self.clone();
        }
        self.scale(invp(self.lc(), p), p)
    }

    fn divrem(&self, d: &PPoly, p: u64) -> (PPoly, PPoly) {
        assert!(!d.is_zero());
        let mut r = self.clone();
        if r.is_zero() || r.deg() < d.deg() {
            return (PPoly::zero(), r);
        }
        let mut q = vec![0u64; r.deg() - d.deg() + 1];
        let dinv = invp(d.lc(), p);
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let qc = mulp(r.lc(), dinv, p);
            q[shift] = qc;
            let mut sub = vec![0u64; shift];
            sub.extend(d.c.iter().map(|&x| mulp(x, qc, p)));
            r = r.sub(&PPoly::new(sub), p);
        }
        (PPoly::new(q), r)
    }

    fn rem(&self, d: &PPoly, p: u64) -> PPoly {
        self.divrem(d, p).1
    }

    fn gcd(a: &PPoly, b: &PPoly, p: u64) -> PPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem(&y, p);
            x = y;
            y = r;
        }
        x.make_monic(p)
    }

    fn derivative(&self, p: u64) -> PPoly {
        if self.c.len() <= 1 {
            return PPoly::zero();
        }
        let c = self
            .c
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| mulp(x, (i as u64) % p, p))
            .collect();
        PPoly::new(c)
    }

    /// `T^e mod f` by square-and-multiply.
    fn pow_t_mod(e: u64, f: &PPoly, p: u64) -> PPoly {
        debug_assert!(f.deg() >= 1);
        let t = PPoly::new(vec![0, 1]).rem(f, p);
        let mut acc = PPoly::new(vec![1]);
        let mut base = t;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(f, p);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base, p).rem(f, p);
            }
        }
        acc
    }

    /// Extended Euclid: returns `(s, t)` with `s*a + t*b = 1`; requires
    /// `gcd(a, b) = 1`.
    fn bezout(a: &PPoly, b: &PPoly, p: u64) -> (PPoly, PPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (PPoly::new(vec![1]), PPoly::zero());
        let (mut t0, mut t1) = (PPoly::zero(), PPoly::new(vec![1]));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1, p);
            (r0, r1) = (r1, r);
            let ns = s0.sub(&q.mul(&s1, p), p);
            (s0, s1) = (s1, ns);
            let nt = t0.sub(&q.mul(&t1, p), p);
            (t0, t1) = (t1, nt);
        }
        assert!(!r0.is_zero() && r0.deg() == 0, "bezout of non-coprime pair");
        let inv = invp(r0.lc(), p);
        (s0.scale(inv, p), t0.scale(inv, p))
    }
}

/// Deterministic Berlekamp: `f` monic and square-free mod `p`. Returns monic
/// irreducible factors in a fixed order.
fn berlekamp(f: &PPoly, p: u64) -> Vec<PPoly> {
    let n = f.deg();
    if n == 1 {
        return vec![f.clone()];
    }
    // Petr matrix: row i holds the coefficients of T^(p*i) mod f.
    let xp = PPoly::pow_t_mod(p, f, p);
    let mut rows: Vec<PPoly> = Vec::with_capacity(n);
    let mut cur = PPoly::new(vec![1]);
    for _ in 0..n {
        rows.push(cur.clone());
        cur = cur.mul(&xp, p).rem(f, p);
    }
    // Solve v(Q - I) = 0: right-nullspace of the transpose.
    let mut m = vec![vec![0u64; n]; n];
    for (i, row) in rows.iter().enumerate() {
        for j in 0..n {
            m[j][i] = row.coeff(j);
        }
        m[i][i] = (m[i][i] + p - 1) % p;
    }
    let basis = nullspace(m, p);
    let r = basis.len();
    let mut factors = vec![f.clone()];
    'outer: for v in &basis {
        let vp = PPoly::new(v.clone());
        if vp.is_zero() || vp.deg() == 0 {
            continue; // constants never split anything
        }
        let mut i = 0;
        while i < factors.len() {
            if factors[i].deg() > 1 {
                for c in 0..p {
                    let shifted = vp.sub(&PPoly::new(vec![c]), p);
                    let g = PPoly::gcd(&factors[i], &shifted, p);
                    if !g.is_zero() && g.deg() > 0 && g.deg() < factors[i].deg() {
                        let rest = factors[i].divrem(&g, p).0.make_monic(p);
                        factors[i] = g;
                        factors.push(rest);
                    }
                    if factors.len() == r {
                        break 'outer;
                    }
                }
            }
            i += 1;
        }
    }
    assert_eq!(factors.len(), r, "berlekamp failed to split completely");
    factors.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.c.cmp(&b.c)));
    factors
}

/// Right-nullspace basis of an n×n matrix over F_p, deterministic.
fn nullspace(mut m: Vec<Vec<u64>>, p: u64) -> Vec<Vec<u64>> {
    let n = m.len();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
    let mut row = 0;
    for col in 0..n {
        let Some(pr) = (row..n).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, pr);
        let inv = invp(m[row][col], p);
        for x in m[row].iter_mut() {
            *x = mulp(*x, inv, p);
        }
        for r in 0..n {
            if r != row && m[r][col] != 0 {
                let k = m[r][col];
                for c2 in 0..n {
                    let sub = mulp(k, m[row][c2], p);
                    m[r][c2] = (m[r][c2] + p - sub) % p;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == n {
            break;
        }
    }
    let mut basis = Vec::new();
    for col in 0..n {
        if pivot_of_col[col].is_some() {
            continue;
        }
        let mut v = vec![0u64; n];
        v[col] = 1;
        for (c2, pc) in pivot_of_col.iter().enumerate() {
            if let Some(prow) = pc {
                // pivot variable c2 = -m[prow][col] * free
                v[c2] = (p - m[*prow][col]) % p;
            }
        }
        basis.push(v);
    }
    basis
}

// ---------------------------------------------------------------------------
// Hensel lifting.
// ---------------------------------------------------------------------------

fn zred(x: &BigInt, m: &BigInt) -> BigInt {
    x.mod_floor(m)
}

fn pmod(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|x| zred(x, m)).collect())
}

fn pmul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    pmod(&a.mul(b), m)
}

fn psub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    pmod(&a.sub(b), m)
}

fn padd(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    pmod(&a.add(b), m)
}

/// Division with remainder modulo `m` by a monic divisor.
fn divrem_monic_mod(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    debug_assert!(d.lc().is_one());
    let mut r = pmod(a, m);
    if r.is_zero() || r.deg() < d.deg() {
        return (ZPoly::zero(), r);
    }
    let mut q = vec![BigInt::zero(); r.deg() - d.deg() + 1];
    while !r.is_zero() && r.deg() >= d.deg() {
        let shift = r.deg() - d.deg();
        let qc = r.lc().clone();
        q[shift] = qc.clone();
        r = pmod(&r.sub(&d.mul(&ZPoly::monomial(shift, qc))), m);
    }
    (ZPoly::new(q), r)
}

fn ppoly_to_z(f: &PPoly) -> ZPoly {
    ZPoly::new(f.c.iter().map(|&x| BigInt::from(x)).collect())
}

/// One quadratic Hensel step from modulus `m` to `m2` (with `m | m2` and
/// `m2 | m^2`): refreshes the factor pair and its Bezout cofactors.
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ZPoly,
    h: &ZPoly,
    s: &ZPoly,
    t: &ZPoly,
    m2: &BigInt,
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    // Factor refresh: g* = g + t*e + q*g, h* = h + (s*e rem h).
    let e = psub(f, &pmul(g, h, m2), m2);
    let (q, r) = divrem_monic_mod(&pmul(s, &e, m2), h, m2);
    let g2 = padd(g, &padd(&pmul(t, &e, m2), &pmul(&q, g, m2), m2), m2);
    let h2 = padd(h, &r, m2);
    debug_assert!(g2.lc().is_one() && h2.lc().is_one());
    // Bezout refresh against the lifted factors.
    let b = psub(
        &padd(&pmul(s, &g2, m2), &pmul(t, &h2, m2), m2),
        &ZPoly::one(),
        m2,
    );
    let (q2, r2) = divrem_monic_mod(&pmul(s, &b, m2), &h2, m2);
    let s2 = psub(s, &r2, m2);
    let t2 = psub(t, &padd(&pmul(t, &b, m2), &pmul(&q2, &g2, m2), m2), m2);
    (g2, h2, s2, t2)
}

/// Lift the complete factorization `facs` of `f` (monic mod `p`) to monic
/// factors mod `modulus` (a power of `p`), by recursion on a balanced split.
fn hensel_lift_tree(f: &ZPoly, facs: &[PPoly], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![pmod(f, modulus)];
    }
    let mid = facs.len() / 2;
    let mut g0 = PPoly::new(vec![1]);
    for q in &facs[..mid] {
        g0 = g0.mul(q, p);
    }
    let mut h0 = PPoly::new(vec![1]);
    for q in &facs[mid..] {
        h0 = h0.mul(q, p);
    }
    let (s0, t0) = PPoly::bezout(&g0, &h0, p);
    let mut g = ppoly_to_z(&g0);
    let mut h = ppoly_to_z(&h0);
    let mut s = ppoly_to_z(&s0);
    let mut t = ppoly_to_z(&t0);
    let mut m = BigInt::from(p);
    while &m < modulus {
        let m2 = (&m * &m).min(modulus.clone());
        (g, h, s, t) = hensel_step(&pmod(f, &m2), &g, &h, &s, &t, &m2);
        m = m2;
    }
    debug_assert_eq!(pmul(&g, &h, modulus), pmod(f, modulus));
    let mut out = hensel_lift_tree(&g, &facs[..mid], p, modulus);
    out.extend(hensel_lift_tree(&h, &facs[mid..], p, modulus));
    out
}

// ---------------------------------------------------------------------------
// Zassenhaus.
// ---------------------------------------------------------------------------

/// Symmetric representative in (-m/2, m/2].
fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = zred(x, m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn symmetric_poly(f: &ZPoly, m: &BigInt) -> ZPoly {
    ZPoly::new(f.coeffs().iter().map(|x| symmetric(x, m)).collect())
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Smallest odd prime that keeps the degree and the square-freeness of `f`.
fn choose_prime(f: &ZPoly) -> u64 {
    let mut p = 3u64;
    loop {
        if is_prime_u64(p) && !(f.lc() % BigInt::from(p)).is_zero() {
            let fp = PPoly::from_z(f, p).make_monic(p);
            let g = PPoly::gcd(&fp, &fp.derivative(p), p);
            if !g.is_zero() && g.deg() == 0 {
                return p;
            }
        }
        p += 2;
    }
}

/// Coefficient bound: any irreducible factor of `f` over ℤ, scaled by
/// `lc(f)`, has all coefficients below `2^n * (||f||_2 + |lc|) * |lc|`.
fn factor_bound(f: &ZPoly) -> BigInt {
    let n = f.deg() as u32;
    let norm = num_integer::Roots::sqrt(&f.squared_l2()) + 1;
    (BigInt::one() << n) * (norm + f.lc().abs()) * f.lc().abs()
}

/// Factor a primitive square-free nonconstant `f` (positive lc) into
/// irreducible primitive positive-lc factors over ℤ.
pub(crate) fn factor_squarefree_z(f: &ZPoly) -> Vec<ZPoly> {
    debug_assert!(!f.is_constant() && f.lc().is_positive());
    let mut out = Vec::new();
    let mut f = f.clone();
    // A root at zero means a factor of T; square-freeness caps it at one.
    if f.coeff(0).is_zero() {
        let t = ZPoly::new(vec![BigInt::zero(), BigInt::one()]);
        f = f.div_exact(&t).expect("T | f");
        out.push(t);
        debug_assert!(!f.coeff(0).is_zero());
        if f.is_constant() {
            return out;
        }
    }
    if f.deg() == 1 {
        out.push(f);
        return out;
    }
    let p = choose_prime(&f);
    let fp = PPoly::from_z(&f, p).make_monic(p);
    let modular = berlekamp(&fp, p);
    if modular.len() == 1 {
        out.push(f);
        return out;
    }
    // Lift to a modulus beyond twice the factor bound, so that the symmetric
    // representative of a true factor is the factor itself.
    let bound = factor_bound(&f) * 2 + 1;
    let mut modulus = BigInt::from(p);
    while modulus < bound {
        modulus = &modulus * &modulus;
    }
    let lc_inv = mod_inverse(f.lc(), &modulus);
    let f_monic = pmod(&f.scale(&lc_inv), &modulus);
    let lifted = hensel_lift_tree(&f_monic, &modular, p, &modulus);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut size = 1usize;
    'sizes: while 2 * size <= remaining.len() {
        let mut combo = Combinations::new(remaining.len(), size);
        while let Some(pick) = combo.next() {
            let mut prod = ZPoly::new(vec![f.lc().clone()]);
            for &k in pick {
                prod = pmul(&prod, &lifted[remaining[k]], &modulus);
            }
            let cand = symmetric_poly(&prod, &modulus).primitive_pos();
            if cand.is_constant() {
                continue;
            }
            // Cheap filter: over ℤ a factor's constant term divides f(0),
            // and f(0) is nonzero here because factors of T were stripped.
            if cand.coeff(0).is_zero() || !(f.coeff(0) % cand.coeff(0)).is_zero() {
                continue;
            }
            if let Some(q) = f.div_exact(&cand) {
                out.push(cand);
                f = q;
                let picked: Vec<usize> = pick.to_vec();
                for &k in picked.iter().rev() {
                    remaining.remove(k);
                }
                continue 'sizes; // rescan the same size over the survivors
            }
        }
        size += 1;
    }
    if !f.is_constant() {
        out.push(f);
    }
    out
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "noninvertible leading coefficient");
    zred(&e.x, m)
}

/// Complete factorization over ℤ: content (with sign) and irreducible
/// primitive positive-lc factors with multiplicities, deterministically
/// ordered.
pub(crate) fn factor_z(f: &ZPoly) -> (BigInt, Vec<(ZPoly, u32)>) {
    assert!(!f.is_zero(), "factor of zero");
    let mut content = f.content();
    if f.lc().is_negative() {
        content = -content;
    }
    let prim = f.primitive_pos();
    if prim.is_constant() {
        return (content, Vec::new());
    }
    let mut factors: Vec<(ZPoly, u32)> = Vec::new();
    for (sf, mult) in squarefree_decomposition(&prim) {
        for irr in factor_squarefree_z(&sf) {
            factors.push((irr, mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then_with(|| a.1.cmp(&b.1))
    });
    (content, factors)
}
