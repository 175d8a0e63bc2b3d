use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

/// Grundmann–Möller rule of degree 2s+1 on the triangle, in barycentric
/// coordinates, weights summing to the reference area 1/2.
pub fn simplex_rule(s: usize) -> Vec<([f64; 3], f64)> {
    let n = 2usize;
    let d = 2 * s + 1;
    let fact = |k: usize| (1..=k).fold(1.0f64, |a, j| a * j as f64);
    let mut rule = Vec::new();
    for i in 0..=s {
        let denom = (d + n - 2 * i) as f64;
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        let w = sign * 2f64.powi(-2 * s as i32) * denom.powi(d as i32) / (fact(i) * fact(d + n - i));
        let m = s - i;
        for b0 in 0..=m {
            for b1 in 0..=m - b0 {
                let b2 = m - b0 - b1;
                let lam = [b0, b1, b2].map(|b| (2 * b + 1) as f64 / denom);
                rule.push((lam, w));
            }
        }
    }
    rule
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    /// Relative tolerance on the integral.
    pub tol: f64,
    /// Upper bound on the number of triangles in the partition.
    pub max_regions: usize,
}

impl QuadOptions {
    pub fn new(tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::InvalidInput(format!("quadrature tolerance {tol} must be positive")));
        }
        Ok(QuadOptions { tol, max_regions: 400_000 })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of the per-triangle error estimates.
    pub err: f64,
    pub regions: usize,
    pub evals: usize,
}

struct Region {
    // corners as barycentric points of the whole simplex
    v: [[f64; 3]; 3],
    area: f64,
    value: f64,
    err: f64,
    id: usize,
}

impl PartialEq for Region {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Region {}
impl PartialOrd for Region {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Region {
    // worst error first, ties to the older region
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err).then_with(|| other.id.cmp(&self.id))
    }
}

struct Rules {
    high: Vec<([f64; 3], f64)>,
    low: Vec<([f64; 3], f64)>,
}

fn apply<F: Fn([f64; 3]) -> f64>(f: &F, v: &[[f64; 3]; 3], rule: &[([f64; 3], f64)]) -> f64 {
    let mut acc = 0.0;
    for (lam, w) in rule {
        let mut p = [0.0; 3];
        for (k, pk) in p.iter_mut().enumerate() {
            *pk = lam[0] * v[0][k] + lam[1] * v[1][k] + lam[2] * v[2][k];
        }
        acc += w * f(p);
    }
    acc
}

fn region<F: Fn([f64; 3]) -> f64>(f: &F, rules: &Rules, v: [[f64; 3]; 3], area: f64, id: usize) -> Region {
    // reference area is 1/2, so scale by 2·area
    let hi = 2.0 * area * apply(f, &v, &rules.high);
    let lo = 2.0 * area * apply(f, &v, &rules.low);
    Region { v, area, value: hi, err: (hi - lo).abs(), id }
}

fn mid(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [0.5 * (a[0] + b[0]), 0.5 * (a[1] + b[1]), 0.5 * (a[2] + b[2])]
}

/// ∫ f over the simplex α1 + α2 + α3 = 1 (measure dα1 dα2, total area 1/2).
///
/// Degree-9 rule for the value, degree-7 rule for the error; the triangle with
/// the largest error is split into four until the summed error drops below
/// `tol · |value|`. The final sum runs over triangles in creation order, so
/// the result does not depend on heap layout.
pub fn integrate_simplex<F: Fn([f64; 3]) -> f64>(f: F, opts: QuadOptions) -> Result<QuadResult> {
    let rules = Rules { high: simplex_rule(4), low: simplex_rule(3) };
    let per_region = rules.high.len() + rules.low.len();
    let corners = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let mut next_id = 0;
    let mut heap = BinaryHeap::new();
    heap.push(region(&f, &rules, corners, 0.5, next_id));
    next_id += 1;
    let mut value = heap.peek().map_or(0.0, |r| r.value);
    let mut err = heap.peek().map_or(0.0, |r| r.err);
    let mut evals = per_region;

    while err > opts.tol * value.abs() {
        if heap.len() + 3 > opts.max_regions {
            return Err(Error::Quadrature { estimate: value, err, regions: heap.len() });
        }
        let worst = heap.pop().expect("partition is never empty");
        let [a, b, c] = worst.v;
        let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
        let area = 0.25 * worst.area;
        value -= worst.value;
        err -= worst.err;
        for v in [[a, ab, ca], [ab, b, bc], [ca, bc, c], [bc, ca, ab]] {
            let r = region(&f, &rules, v, area, next_id);
            next_id += 1;
            evals += per_region;
            if !r.value.is_finite() {
                return Err(Error::Quadrature { estimate: f64::NAN, err: f64::INFINITY, regions: heap.len() });
            }
            value += r.value;
            err += r.err;
            heap.push(r);
        }
        if heap.len() % 1024 == 0 {
            // running sums drift; refresh them now and then
            let (v, e) = totals(&heap);
            value = v;
            err = e;
        }
    }
    let (value, err) = totals(&heap);
    Ok(QuadResult { value, err, regions: heap.len(), evals })
}

fn totals(heap: &BinaryHeap<Region>) -> (f64, f64) {
    let mut all: Vec<&Region> = heap.iter().collect();
    all.sort_by_key(|r| r.id);
    let value = all.iter().map(|r| r.value).sum();
    let err = all.iter().map(|r| r.err).sum();
    (value, err)
}
