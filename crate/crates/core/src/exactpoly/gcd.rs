//! Multivariate gcd over the rationals by modular images.
//!
//! Inputs are homogenized, then sheared by `x_i -> x_i + c_i x_1` so that
//! both polynomials contain a pure power of `x_1` with a constant
//! coefficient. The gcd is then monic in `x_1` after dehomogenizing, its
//! images modulo word-sized primes are found by dense evaluation and
//! interpolation, and the rational coefficients are recovered by Chinese
//! remaindering plus rational reconstruction. Every candidate is checked by
//! exact trial division before it is returned.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{rat, Monomial, Polynomial};

const HOMOG_VAR: &str = "__h";

type Key = Vec<u32>;
type ModPoly = BTreeMap<Key, u64>;

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, descending.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn reduce(c: &BigInt, p: u64) -> u64 {
    let r = c.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap()
}

/// Dense univariate arithmetic mod p, coefficients low to high.
mod uni {
    use super::{invmod, mulmod};

    pub fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let inv = invmod(*b.last().unwrap(), p);
        while r.len() > db {
            let q = mulmod(*r.last().unwrap(), inv, p);
            let shift = r.len() - 1 - db;
            if q != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    let t = mulmod(q, bj, p);
                    r[shift + j] = (r[shift + j] + p - t) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        r
    }

    pub fn monic(a: &mut [u64], p: u64) {
        if let Some(&lc) = a.last() {
            let inv = invmod(lc, p);
            for c in a.iter_mut() {
                *c = mulmod(*c, inv, p);
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut a = a.to_vec();
        let mut b = b.to_vec();
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&mut a, p);
        a
    }
}

fn mod_to_uni(f: &ModPoly) -> Vec<u64> {
    let n = f.keys().map(|k| k[0]).max().unwrap_or(0) as usize;
    let mut out = vec![0u64; if f.is_empty() { 0 } else { n + 1 }];
    for (k, &c) in f {
        out[k[0] as usize] = c;
    }
    out
}

fn deg_x1(f: &ModPoly) -> Option<u32> {
    f.keys().map(|k| k[0]).max()
}

/// Evaluate the last variable at `a`.
fn eval_last(f: &ModPoly, a: u64, p: u64) -> ModPoly {
    let mut out = ModPoly::new();
    let maxe = f.keys().map(|k| *k.last().unwrap()).max().unwrap_or(0);
    let mut pw = Vec::with_capacity(maxe as usize + 1);
    let mut acc = 1u64;
    for _ in 0..=maxe {
        pw.push(acc);
        acc = mulmod(acc, a, p);
    }
    for (k, &c) in f {
        let e = *k.last().unwrap() as usize;
        let key = k[..k.len() - 1].to_vec();
        let t = mulmod(c, pw[e], p);
        let slot = out.entry(key).or_insert(0);
        *slot = (*slot + t) % p;
    }
    out.retain(|_, c| *c != 0);
    out
}

/// Monic-in-x1 gcd mod p of polynomials in (x1, y1..yk) whose x1-leading
/// coefficients are nonzero constants.
fn gcd_modp(f: &ModPoly, g: &ModPoly, nvars: usize, p: u64) -> ModPoly {
    if nvars == 1 {
        let h = uni::gcd(&mod_to_uni(f), &mod_to_uni(g), p);
        return h
            .into_iter()
            .enumerate()
            .filter(|(_, c)| *c != 0)
            .map(|(i, c)| (vec![i as u32], c))
            .collect();
    }
    let last = nvars - 1;
    let bound = f
        .keys()
        .map(|k| k[last])
        .max()
        .unwrap_or(0)
        .min(g.keys().map(|k| k[last]).max().unwrap_or(0)) as usize;
    let mut points: Vec<u64> = Vec::new();
    let mut images: Vec<ModPoly> = Vec::new();
    let mut best: Option<u32> = None;
    let mut needed = bound + 1;
    let mut a = 1u64;
    loop {
        a += 1;
        let fa = eval_last(f, a, p);
        let ga = eval_last(g, a, p);
        let h = gcd_modp(&fa, &ga, nvars - 1, p);
        let d = deg_x1(&h).unwrap_or(0);
        match best {
            Some(b) if d > b => continue,
            Some(b) if d < b => {
                points.clear();
                images.clear();
                needed = bound + 1;
            }
            _ => {}
        }
        best = Some(d);
        points.push(a);
        images.push(h);
        if images.len() < needed {
            continue;
        }
        // Every point so far may be unlucky in the same way; a candidate that
        // fails to divide asks for more points until a lower degree shows up.
        let h = interpolate_last(&points, &images, p);
        if divides_modp(&h, f, p) && divides_modp(&h, g, p) {
            return h;
        }
        needed += 1;
    }
}

/// Whether `h`, monic in x1, divides `f` modulo `p`.
fn divides_modp(h: &ModPoly, f: &ModPoly, p: u64) -> bool {
    let Some(dh) = deg_x1(h) else {
        return f.is_empty();
    };
    let mut r = f.clone();
    while let Some(dr) = deg_x1(&r) {
        if dr < dh {
            return false;
        }
        let top: Vec<(Key, u64)> = r
            .iter()
            .filter(|(k, _)| k[0] == dr)
            .map(|(k, &c)| (k.clone(), c))
            .collect();
        for (tk, tc) in top {
            for (hk, &hc) in h {
                let mut k: Key = tk.iter().zip(hk).map(|(a, b)| a + b).collect();
                k[0] -= dh;
                let slot = r.entry(k).or_insert(0);
                *slot = (*slot + p - mulmod(tc, hc, p)) % p;
            }
        }
        r.retain(|_, c| *c != 0);
    }
    true
}

/// Newton interpolation of each coefficient in the new last variable.
fn interpolate_last(points: &[u64], images: &[ModPoly], p: u64) -> ModPoly {
    let mut keys: Vec<&Key> = images.iter().flat_map(|m| m.keys()).collect();
    keys.sort();
    keys.dedup();
    let n = points.len();
    let mut out = ModPoly::new();
    for key in keys {
        let vals: Vec<u64> = images
            .iter()
            .map(|m| m.get(key).copied().unwrap_or(0))
            .collect();
        // divided differences
        let mut dd = vals.clone();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = (dd[i] + p - dd[i - 1]) % p;
                let den = (points[i] + p - points[i - j]) % p;
                dd[i] = mulmod(num, invmod(den, p), p);
            }
        }
        // expand Newton form into monomial coefficients
        let mut coeffs = vec![0u64; n];
        for i in (0..n).rev() {
            // coeffs = coeffs * (y - points[i]) + dd[i]
            let mut next = vec![0u64; n];
            for k in 0..n {
                if coeffs[k] == 0 {
                    continue;
                }
                if k + 1 < n {
                    next[k + 1] = (next[k + 1] + coeffs[k]) % p;
                }
                let t = mulmod(coeffs[k], points[i], p);
                next[k] = (next[k] + p - t) % p;
            }
            next[0] = (next[0] + dd[i]) % p;
            coeffs = next;
        }
        for (e, c) in coeffs.into_iter().enumerate() {
            if c != 0 {
                let mut k = key.clone();
                k.push(e as u32);
                out.insert(k, c);
            }
        }
    }
    out
}

fn binomial_row(n: u32, p: u64) -> Vec<u64> {
    let mut row = vec![1u64];
    for _ in 0..n {
        let mut next = vec![1u64; row.len() + 1];
        for i in 1..row.len() {
            next[i] = (row[i - 1] + row[i]) % p;
        }
        row = next;
    }
    row
}

/// Image mod p of `F(x1, x2 + c2 x1, ..., x_{N-1} + c_{N-1} x1, 1 + c_N x1)`
/// as a polynomial in (x1, x2, ..., x_{N-1}).
fn shear_dehomogenize_modp(terms: &[(Monomial, BigInt)], shifts: &[i64], p: u64) -> ModPoly {
    let nv = shifts.len() + 1; // N
    let mut out = ModPoly::new();
    let shift_mod: Vec<u64> = shifts
        .iter()
        .map(|&c| reduce(&BigInt::from(c), p))
        .collect();
    for (m, c) in terms {
        let c = reduce(c, p);
        if c == 0 {
            continue;
        }
        // product over variables of expansions; represented as map over (x1, x2..x_{N-1})
        let mut acc: ModPoly = ModPoly::new();
        let mut k0 = vec![0u32; nv - 1];
        k0[0] = m.0[0];
        acc.insert(k0, c);
        for i in 1..nv {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let row = binomial_row(e, p);
            let s = shift_mod[i - 1];
            let mut next = ModPoly::new();
            for (key, &a) in &acc {
                // (x_i + s x1)^e, or (1 + s x1)^e for the last variable
                let mut spow = 1u64;
                for j in 0..=e {
                    // j copies of s*x1, e-j copies of x_i (or 1)
                    let coef = mulmod(mulmod(row[j as usize], spow, p), a, p);
                    spow = mulmod(spow, s, p);
                    if coef == 0 {
                        continue;
                    }
                    let mut k = key.clone();
                    k[0] += j;
                    if i < nv - 1 {
                        k[i] += e - j;
                    }
                    let slot = next.entry(k).or_insert(0);
                    *slot = (*slot + coef) % p;
                }
            }
            next.retain(|_, v| *v != 0);
            acc = next;
        }
        for (k, v) in acc {
            let slot = out.entry(k).or_insert(0);
            *slot = (*slot + v) % p;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn rational_reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m >> 1usize).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    let g = r1.gcd(&t1);
    if !g.is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Deterministic small shears tried in order.
fn shear_candidates(count: usize) -> impl Iterator<Item = Vec<i64>> {
    let seq = [1i64, -2, 3, 2, -1, 5, -3, 4, 7, -5, 6, -7, 11, -4, 9, 13];
    (0usize..).map(move |t| {
        (0..count)
            .map(|i| seq[(t * 7 + i * 3) % seq.len()] + (t / seq.len()) as i64 * 17)
            .collect()
    })
}

/// Greatest common divisor, normalized to integer coefficients with gcd one
/// and positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (f, g) = if f.vars() == g.vars() {
        (f.clone(), g.clone())
    } else {
        f.aligned(g)
    };
    if f.is_zero() {
        return g.primitive();
    }
    if g.is_zero() {
        return f.primitive();
    }
    let vars = f.vars().to_vec();
    let one = Polynomial::constant(&vars, BigRational::one());
    let (mf, f) = f.split_monomial_content();
    let (mg, g) = g.split_monomial_content();
    let mono = Monomial(mf.0.iter().zip(&mg.0).map(|(a, b)| *a.min(b)).collect());
    let mono_poly = one.mul_monomial(&mono, &BigRational::one());
    if f.is_constant() || g.is_constant() {
        return mono_poly.primitive();
    }
    let core = gcd_no_monomial(&f, &g);
    (&core * &mono_poly).primitive()
}

fn gcd_no_monomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let vars = f.vars().to_vec();
    // Restrict to the variables that occur in either input.
    let mut used: Vec<usize> = f.occurring_vars();
    for i in g.occurring_vars() {
        if !used.contains(&i) {
            used.push(i);
        }
    }
    used.sort();
    let mut work_vars: Vec<String> = used.iter().map(|&i| vars[i].clone()).collect();
    let mut fw = f.with_vars(&work_vars).unwrap();
    let mut gw = g.with_vars(&work_vars).unwrap();
    let homogenized = !(fw.is_homogeneous() && gw.is_homogeneous());
    if homogenized {
        work_vars.push(HOMOG_VAR.to_string());
        fw = fw.with_vars(&work_vars).unwrap();
        gw = gw.with_vars(&work_vars).unwrap();
        let h = work_vars.len() - 1;
        fw = fw.homogenize(h, fw.total_degree().unwrap());
        gw = gw.homogenize(h, gw.total_degree().unwrap());
    }
    let n = work_vars.len();
    if n == 1 {
        // homogeneous in one variable without monomial content: constants
        return Polynomial::constant(&vars, BigRational::one());
    }
    let h = homogeneous_gcd(&fw, &gw, &work_vars);
    let h = if homogenized {
        h.set_var_one(n - 1)
    } else {
        h
    };
    let h = h.with_vars(&vars).expect("gcd lives in the input ring");
    h.primitive()
}

/// Gcd of two homogeneous polynomials without monomial content in `n >= 2`
/// variables.
fn homogeneous_gcd(f: &Polynomial, g: &Polynomial, vars: &[String]) -> Polynomial {
    let n = vars.len();
    let df = f.total_degree().unwrap();
    let dg = g.total_degree().unwrap();
    // choose shear with nonzero pure x1 coefficient in both
    let shifts = shear_candidates(n - 1)
        .find(|s| {
            let mut pt = vec![rat(1)];
            pt.extend(s.iter().map(|&c| rat(c)));
            !f.evaluate(&pt).is_zero() && !g.evaluate(&pt).is_zero()
        })
        .unwrap();
    let fi = f.integer_terms();
    let gi = g.integer_terms();
    let mut lc_pt = vec![rat(1)];
    lc_pt.extend(shifts.iter().map(|&c| rat(c)));
    let lcf = f.primitive().evaluate(&lc_pt).to_integer();
    let lcg = g.primitive().evaluate(&lc_pt).to_integer();

    let dehom_vars: Vec<String> = vars[..n - 1].to_vec();
    let mut modulus = BigInt::one();
    let mut residues: BTreeMap<Key, BigInt> = BTreeMap::new();
    let mut best_deg: Option<u32> = None;
    let mut last_candidate: Option<Polynomial> = None;
    for (count, p) in Primes((1u64 << 62) + 1).enumerate() {
        assert!(count < 4000, "modular gcd failed to stabilize");
        if reduce(&lcf, p) == 0 || reduce(&lcg, p) == 0 {
            continue;
        }
        let fp = shear_dehomogenize_modp(&fi, &shifts, p);
        let gp = shear_dehomogenize_modp(&gi, &shifts, p);
        let hp = gcd_modp(&fp, &gp, n - 1, p);
        let d = deg_x1(&hp).unwrap_or(0);
        if d == 0 {
            return Polynomial::constant(vars, BigRational::one());
        }
        match best_deg {
            Some(b) if d > b => continue,
            Some(b) if d < b => {
                residues.clear();
                modulus = BigInt::one();
                last_candidate = None;
            }
            _ => {}
        }
        best_deg = Some(d);
        // CRT merge
        let pb = BigInt::from(p);
        let minv = BigInt::from(invmod(reduce(&modulus, p), p));
        let mut keys: Vec<Key> = residues.keys().cloned().collect();
        keys.extend(hp.keys().cloned());
        keys.sort();
        keys.dedup();
        let mut merged = BTreeMap::new();
        for k in keys {
            let r_old = residues.get(&k).cloned().unwrap_or_else(BigInt::zero);
            let r_new = BigInt::from(hp.get(&k).copied().unwrap_or(0));
            // x = r_old + modulus * ((r_new - r_old) * modulus^-1 mod p)
            let diff = (&r_new - &r_old).mod_floor(&pb);
            let t = (diff * &minv).mod_floor(&pb);
            merged.insert(k, &r_old + &modulus * t);
        }
        modulus *= &pb;
        residues = merged;

        // attempt reconstruction
        let mut terms = Vec::new();
        let mut ok = true;
        for (k, r) in &residues {
            match rational_reconstruct(r, &modulus) {
                Some(q) => {
                    if !q.is_zero() {
                        terms.push((k.clone(), q));
                    }
                }
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let cand = Polynomial::from_terms(&dehom_vars, terms);
        if last_candidate.as_ref() != Some(&cand) {
            last_candidate = Some(cand);
            continue;
        }
        // stable over two primes: rehomogenize, unshear, verify
        let cand = cand.with_vars(vars).unwrap();
        let hom = cand.homogenize(n - 1, d);
        let mut images = vec![Polynomial::var(vars, 0)];
        for (i, &c) in shifts.iter().enumerate() {
            let xi = Polynomial::var(vars, i + 1);
            let x1 = Polynomial::var(vars, 0).scale(&rat(-c));
            images.push(&xi + &x1);
        }
        let unsheared = hom.substitute_all(&images).primitive();
        if d <= df.min(dg) && f.exact_div(&unsheared).is_some() && g.exact_div(&unsheared).is_some() {
            return unsheared;
        }
    }
    unreachable!()
}

fn content_in(f: &Polynomial, i: usize) -> Polynomial {
    let mut c = Polynomial::zero(f.vars());
    for coeff in f.coefficients_in(i).iter().rev() {
        if coeff.is_zero() {
            continue;
        }
        c = gcd(&c, coeff);
        if c.is_constant() {
            break;
        }
    }
    c
}

/// Restriction to a random-looking line `p + s q` as a univariate polynomial
/// in `s` (first variable slot).
fn restrict_to_line(f: &Polynomial, salt: i64) -> Polynomial {
    let n = f.nvars();
    let s_vars = [f.vars()[0].clone()];
    let images: Vec<Polynomial> = (0..n)
        .map(|i| {
            let base = rat(((i as i64 * 7 + 3 + salt * 5) % 11) - 5);
            let dir = rat(((i as i64 * 5 + 2 + salt * 3) % 13) - 6 + if i == 0 { 13 } else { 0 });
            let s = Polynomial::var(&s_vars, 0);
            &s.scale(&dir) + &Polynomial::constant(&s_vars, base)
        })
        .collect();
    f.substitute_all(&images)
}

/// Sound one-sided test: `true` proves that `f` is squarefree.
fn certainly_squarefree(f: &Polynomial) -> bool {
    let d = match f.total_degree() {
        Some(d) => d,
        None => return false,
    };
    for salt in 0..3 {
        let r = restrict_to_line(f, salt);
        if r.total_degree() != Some(d) {
            continue;
        }
        let g = gcd(&r, &r.derivative(0));
        return g.is_constant();
    }
    false
}

/// Squarefree decomposition `f = c * prod a_i^i` with pairwise coprime
/// squarefree `a_i`; returns `(a_i, i)` for nonconstant factors, each primitive.
pub fn squarefree_decomposition(f: &Polynomial) -> Vec<(Polynomial, u32)> {
    if f.is_zero() {
        return vec![];
    }
    let vars = f.vars().to_vec();
    let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
    let push = |out: &mut BTreeMap<u32, Polynomial>, a: Polynomial, k: u32| {
        if a.is_constant() {
            return;
        }
        let slot = out
            .entry(k)
            .or_insert_with(|| Polynomial::constant(&vars, BigRational::one()));
        *slot = &*slot * &a;
    };
    let (mono, rest) = f.split_monomial_content();
    for (i, &e) in mono.0.iter().enumerate() {
        if e > 0 {
            push(&mut out, Polynomial::var(&vars, i), e);
        }
    }
    decompose_rec(&rest, &mut |a, k| push(&mut out, a, k));
    out.into_iter()
        .map(|(k, a)| (a.primitive(), k))
        .collect()
}

fn decompose_rec(f: &Polynomial, emit: &mut dyn FnMut(Polynomial, u32)) {
    if f.is_constant() {
        return;
    }
    if certainly_squarefree(f) {
        emit(f.clone(), 1);
        return;
    }
    let i = f.occurring_vars()[0];
    let cont = content_in(f, i);
    let pp = if cont.is_constant() {
        f.clone()
    } else {
        f.exact_div(&cont).expect("content divides")
    };
    if !cont.is_constant() {
        decompose_rec(&cont, emit);
    }
    yun(&pp, i, emit);
}

fn yun(f: &Polynomial, i: usize, emit: &mut dyn FnMut(Polynomial, u32)) {
    let df = f.derivative(i);
    let a0 = gcd(f, &df);
    let mut b = f.exact_div(&a0).unwrap();
    let c = df.exact_div(&a0).unwrap();
    let mut d = &c - &b.derivative(i);
    let mut k = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        let b_next = b.exact_div(&a).unwrap();
        let c_next = d.exact_div(&a).unwrap();
        d = &c_next - &b_next.derivative(i);
        emit(a, k);
        b = b_next;
        k += 1;
    }
}

/// Product of the distinct irreducible factors of `f`, up to a scalar.
pub fn squarefree_part(f: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::constant(f.vars(), BigRational::one());
    for (a, _) in squarefree_decomposition(f) {
        acc = &acc * &a;
    }
    acc.primitive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::parse_poly;

    fn p(s: &str) -> Polynomial {
        parse_poly(s, &["x", "y", "z"]).unwrap()
    }

    #[test]
    fn primes_are_prime() {
        let ps: Vec<u64> = Primes((1 << 62) + 1).take(3).collect();
        assert!(ps.iter().all(|&q| is_prime(q)));
        assert!(!is_prime(1 << 61));
        assert!(is_prime((1u64 << 61) - 1));
    }

    #[test]
    fn univariate_gcd() {
        let g = gcd(&p("x^3 - 1"), &p("x^2 - 1"));
        assert_eq!(g, p("x - 1"));
    }

    #[test]
    fn multivariate_gcd() {
        let a = p("(x + 2*y - z)*(x^2 - y*z + 3*z^2)");
        let b = p("(x + 2*y - z)*(y^2 + x*z)");
        assert_eq!(gcd(&a, &b), p("x + 2*y - z"));
        let c = p("(x*y + 1)^2*(y - 3)");
        let d = p("(x*y + 1)*(x + 5)");
        assert_eq!(gcd(&c, &d), p("x*y + 1"));
    }

    #[test]
    fn monomial_content_is_kept() {
        assert_eq!(gcd(&p("x^2*y*(x+y)"), &p("x*y^3*(x+y)")), p("x^2*y + x*y^2"));
        assert_eq!(gcd(&p("x^2"), &p("y")), p("1"));
    }

    #[test]
    fn unlucky_evaluation_point() {
        // after the shear, the only image taken at first shares a root
        let a = p("-2*x^2*y^2 + 2*x*y^2 - 2");
        let b = p("-4*x*y^2 + 2*y^2");
        assert_eq!(gcd(&a, &b), p("1"));
        let f = p("-2*(x^2*y^2 - x*y^2 + 1)^2");
        assert_eq!(squarefree_part(&f), p("x^2*y^2 - x*y^2 + 1"));
    }

    #[test]
    fn coprime_inputs() {
        assert!(gcd(&p("x^2 + y^2 + z^2"), &p("x*y - z^2")).is_constant());
    }

    #[test]
    fn squarefree_examples() {
        assert!(squarefree_part(&p("(x+y)^2")).same_up_to_scalar(&p("x+y")));
        let f = p("x^3 + y^3 + z^3");
        assert!(squarefree_part(&f).same_up_to_scalar(&f));
        let g = p("z^5*(x - y)^3*(x^2 + y*z)^2*(x + z)");
        let dec = squarefree_decomposition(&g);
        let mults: Vec<u32> = dec.iter().map(|(_, k)| *k).collect();
        assert_eq!(mults, vec![1, 2, 3, 5]);
        assert!(dec[1].0.same_up_to_scalar(&p("x^2 + y*z")));
    }

    #[test]
    fn content_factors_are_found() {
        // (y + z)^2 is free of x, lives in the content with respect to x
        let g = p("(y + z)^2*(x^2 + y*z + 1)");
        let dec = squarefree_decomposition(&g);
        assert_eq!(dec.len(), 2);
        assert!(dec.iter().any(|(a, k)| *k == 2 && a.same_up_to_scalar(&p("y+z"))));
    }
}
