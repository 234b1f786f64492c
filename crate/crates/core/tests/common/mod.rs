//! Independent reference evaluators for the integration and acceptance
//! tests. Nothing here calls the library's LP builders: each evaluator
//! transcribes an inequality block directly and returns the fixed-schedule
//! rate caps `(cap_a, cap_b)`, which is what `grid_oracle` consumes.

#![allow(dead_code)]

use diamond_core::protocols::ArdfParams;
use diamond_core::linprog::Constraint;
use diamond_core::{ChannelConfig, Convention, LinearProgram};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn c(g: f64) -> f64 {
    (1.0 + g).log2()
}

pub fn coh(gs: &[f64]) -> f64 {
    let s: f64 = gs.iter().map(|g| g.sqrt()).sum();
    c(s * s)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn db(rng: &mut ChaCha8Rng) -> f64 {
    10f64.powf(rng.gen_range(0.0..30.0) / 10.0)
}

pub fn random_plain(rng: &mut ChaCha8Rng) -> ChannelConfig {
    ChannelConfig::plain(db(rng), db(rng), db(rng), db(rng)).unwrap()
}

pub fn random_direct(rng: &mut ChaCha8Rng) -> ChannelConfig {
    ChannelConfig::direct_link(db(rng), db(rng), db(rng), db(rng), db(rng)).unwrap()
}

pub fn random_interfering(rng: &mut ChaCha8Rng) -> ChannelConfig {
    ChannelConfig::interfering_relays(db(rng), db(rng), db(rng), db(rng), db(rng)).unwrap()
}

/// Link SNRs pulled out once so the blocks below read like the printed ones.
#[derive(Clone, Copy)]
pub struct G {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub ab: f64,
    pub r12: f64,
    pub scale: f64,
}

impl G {
    pub fn of(ch: &ChannelConfig) -> Self {
        G {
            a1: ch.gamma_a1(),
            a2: ch.gamma_a2(),
            b1: ch.gamma_b1(),
            b2: ch.gamma_b2(),
            ab: ch.gamma_ab().unwrap_or(0.0),
            r12: ch.gamma_12().unwrap_or(0.0),
            scale: match ch.convention() {
                Convention::AsPrinted => 0.5,
                Convention::Complex => 1.0,
            },
        }
    }
}

/// `R <= sum coeff * mu_state`; `to_b` marks the `R_a` rows.
#[derive(Debug, Clone)]
pub struct PrintedRow {
    pub to_b: bool,
    pub terms: Vec<(u8, f64)>,
}

fn ra(terms: &[(u8, f64)]) -> PrintedRow {
    PrintedRow { to_b: true, terms: terms.to_vec() }
}

fn rb(terms: &[(u8, f64)]) -> PrintedRow {
    PrintedRow { to_b: false, terms: terms.to_vec() }
}

pub const PLAIN_STATES: [u8; 6] = [1, 2, 5, 6, 13, 14];
pub const DIRECT_STATES: [u8; 10] = [1, 2, 3, 4, 5, 6, 7, 8, 13, 14];
pub const INTERFERING_STATES: [u8; 10] = [1, 2, 5, 6, 9, 10, 11, 12, 13, 14];

pub fn plain_block(ch: &ChannelConfig) -> Vec<PrintedRow> {
    let G { a1, a2, b1, b2, .. } = G::of(ch);
    vec![
        ra(&[(14, c(a1 + a2)), (1, c(a1)), (2, c(a2))]),
        ra(&[(14, c(a2)), (13, c(b1)), (2, c(a2) + c(b1))]),
        ra(&[(14, c(a1)), (13, c(b2)), (1, c(a1) + c(b2))]),
        ra(&[(13, coh(&[b1, b2])), (1, c(b2)), (2, c(b1))]),
        rb(&[(14, c(b1 + b2)), (5, c(b1)), (6, c(b2))]),
        rb(&[(14, c(b2)), (13, c(a1)), (6, c(a1) + c(b2))]),
        rb(&[(14, c(b1)), (13, c(a2)), (5, c(b1) + c(a2))]),
        rb(&[(13, coh(&[a1, a2])), (5, c(a2)), (6, c(a1))]),
    ]
}

pub fn direct_block(ch: &ChannelConfig) -> Vec<PrintedRow> {
    let G { a1, a2, b1, b2, ab, .. } = G::of(ch);
    vec![
        ra(&[(14, c(a1 + a2)), (4, c(ab)), (2, c(a2 + ab)), (1, c(a1 + ab)), (3, c(a1 + a2 + ab))]),
        ra(&[(14, c(a2)), (13, c(b1)), (4, coh(&[b1, ab])), (2, c(b1) + c(a2 + ab)), (1, c(ab)), (3, c(a2 + ab))]),
        ra(&[(14, c(a1)), (13, c(b2)), (4, coh(&[b2, ab])), (2, c(ab)), (1, c(b2) + c(a1 + ab)), (3, c(a1 + ab))]),
        ra(&[(13, coh(&[b1, b2])), (4, coh(&[b1, b2, ab])), (2, coh(&[b1, ab])), (1, coh(&[b2, ab])), (3, c(ab))]),
        rb(&[(14, c(b1 + b2)), (8, c(ab)), (6, c(b2 + ab)), (5, c(b1 + ab)), (7, c(b1 + b2 + ab))]),
        rb(&[(14, c(b2)), (13, c(a1)), (8, coh(&[a1, ab])), (6, c(a1) + c(b2 + ab)), (5, c(ab)), (7, c(b2 + ab))]),
        rb(&[(14, c(b1)), (13, c(a2)), (8, coh(&[a2, ab])), (6, c(ab)), (5, c(a2) + c(b1 + ab)), (7, c(b1 + ab))]),
        rb(&[(13, coh(&[a1, a2])), (8, coh(&[a1, a2, ab])), (6, coh(&[a1, ab])), (5, coh(&[a2, ab])), (7, c(ab))]),
    ]
}

/// The interfering-relay block, with the two unbalanced parentheses in the
/// `R_b` rows closed right after `C(gamma_12)`.
pub fn interfering_block(ch: &ChannelConfig) -> Vec<PrintedRow> {
    let G { a1, a2, b1, b2, r12: g, .. } = G::of(ch);
    vec![
        ra(&[(14, c(a1 + a2)), (10, c(a2)), (2, c(a2)), (9, c(a1)), (1, c(a1))]),
        ra(&[(14, c(a2)), (13, c(b1)), (10, coh(&[a2, g])), (2, c(a2) + c(b1 + g)), (11, c(b1 + g)), (6, c(g))]),
        ra(&[(14, c(a1)), (13, c(b2)), (9, coh(&[a1, g])), (1, c(a1) + c(b2 + g)), (12, c(b2 + g)), (5, c(g))]),
        ra(&[(13, coh(&[b1, b2])), (2, c(b1)), (1, c(b2)), (11, c(b1)), (12, c(b2))]),
        rb(&[(14, c(b1 + b2)), (10, c(b2)), (9, c(b1)), (5, c(b1)), (6, c(b2))]),
        rb(&[(14, c(b2)), (13, c(a1)), (10, coh(&[b2, g])), (2, c(g)), (11, c(a1 + g)), (6, c(b2) + c(a1 + g))]),
        rb(&[(14, c(b1)), (13, c(a2)), (9, coh(&[b1, g])), (1, c(g)), (5, c(b1) + c(a2 + g)), (12, c(a2 + g))]),
        rb(&[(13, coh(&[a1, a2])), (11, c(a1)), (5, c(a2)), (12, c(a2)), (6, c(a1))]),
    ]
}

pub fn printed_block(ch: &ChannelConfig) -> (Vec<PrintedRow>, &'static [u8]) {
    match ch.variant() {
        diamond_core::Variant::Plain => (plain_block(ch), &PLAIN_STATES),
        diamond_core::Variant::DirectLink => (direct_block(ch), &DIRECT_STATES),
        diamond_core::Variant::InterferingRelays => (interfering_block(ch), &INTERFERING_STATES),
    }
}

/// Dense form of an outer-bound block over a fixed state order.
pub struct Block {
    rows: Vec<(bool, Vec<f64>)>,
}

impl Block {
    /// States missing from `states` are pinned to zero.
    pub fn new(rows: &[PrintedRow], states: &[u8]) -> Self {
        let rows = rows
            .iter()
            .map(|r| {
                let mut dense = vec![0.0; states.len()];
                for (s, coef) in &r.terms {
                    if let Some(i) = states.iter().position(|x| x == s) {
                        dense[i] += coef;
                    }
                }
                (r.to_b, dense)
            })
            .collect();
        Block { rows }
    }

    /// `(cap_a, cap_b)` at time shares `mu`.
    pub fn caps(&self, mu: &[f64]) -> (f64, f64) {
        let mut caps = (f64::INFINITY, f64::INFINITY);
        for (to_b, dense) in &self.rows {
            let v: f64 = dense.iter().zip(mu).map(|(a, m)| a * m).sum();
            if *to_b {
                caps.0 = caps.0.min(v);
            } else {
                caps.1 = caps.1.min(v);
            }
        }
        caps
    }
}

/// Lattice compute rate `[s * log2(x / (x + y) + x)]^+` with `0/0 = 0`.
pub fn lattice_rate(g: &G, x: f64, y: f64) -> f64 {
    let frac = if x + y > 0.0 { x / (x + y) } else { 0.0 };
    (g.scale * (frac + x).log2()).max(0.0)
}

/// CF-CMAC caps over `mu = [mu9, mu10, mu13]`.
pub fn cf_cmac_caps(ch: &ChannelConfig, mu: &[f64]) -> (f64, f64) {
    let g = G::of(ch);
    let (m9, m10, m13) = (mu[0], mu[1], mu[2]);
    let a1 = (m9 * lattice_rate(&g, g.a1, g.b1)).min(m13 * c(g.b1));
    let a2 = (m10 * lattice_rate(&g, g.a2, g.b2)).min(m13 * c(g.b2));
    let b1 = (m9 * lattice_rate(&g, g.b1, g.a1)).min(m13 * c(g.a1));
    let b2 = (m10 * lattice_rate(&g, g.b2, g.a2)).min(m13 * c(g.a2));
    ((a1 + a2).min(m13 * c(g.b1 + g.b2)), (b1 + b2).min(m13 * c(g.a1 + g.a2)))
}

/// CF-BC caps over `mu = [mu9, mu10, mu11, mu12]`.
pub fn cf_bc_caps(ch: &ChannelConfig, mu: &[f64]) -> (f64, f64) {
    let g = G::of(ch);
    let (m9, m10, m11, m12) = (mu[0], mu[1], mu[2], mu[3]);
    let a = (m9 * lattice_rate(&g, g.a1, g.b1)).min(m11 * c(g.b1)) + (m10 * lattice_rate(&g, g.a2, g.b2)).min(m12 * c(g.b2));
    let b = (m9 * lattice_rate(&g, g.b1, g.a1)).min(m11 * c(g.a1)) + (m10 * lattice_rate(&g, g.b2, g.a2)).min(m12 * c(g.a2));
    (a, b)
}

fn star(x: f64, y: f64) -> f64 {
    let frac = if x + y > 0.0 { y / (x + y) } else { 0.0 };
    c(x - frac).max(0.0)
}

/// CoMABC states: `[9, 11, coop_1, 10, 12, coop_2]`.
pub fn comabc_states(ch: &ChannelConfig) -> [u8; 6] {
    let g = G::of(ch);
    let coop1 = if g.a1 >= g.b1 { 2 } else { 6 };
    let coop2 = if g.a2 >= g.b2 { 1 } else { 5 };
    [9, 11, coop1, 10, 12, coop2]
}

/// CoMABC caps over `mu` ordered as [`comabc_states`].
pub fn comabc_caps(ch: &ChannelConfig, mu: &[f64]) -> (f64, f64) {
    let g = G::of(ch);
    let mut total = (0.0, 0.0);
    for (relay, (ga, gb)) in [(g.a1, g.b1), (g.a2, g.b2)].into_iter().enumerate() {
        let (mac, bc, coop) = (mu[3 * relay], mu[3 * relay + 1], mu[3 * relay + 2]);
        let (ra_star, rb_star) = (star(ga, gb), star(gb, ga));
        // Block for gamma_a >= gamma_b; the mirror swaps the roles.
        let (helped, other) = if ga >= gb {
            (
                (mac * ra_star + coop * c(g.ab)).min(bc * c(gb) + coop * c(gb + g.ab)),
                (mac * rb_star).min(bc * c(ga)),
            )
        } else {
            (
                (mac * rb_star + coop * c(g.ab)).min(bc * c(ga) + coop * c(ga + g.ab)),
                (mac * ra_star).min(bc * c(gb)),
            )
        };
        if ga >= gb {
            total = (total.0 + helped, total.1 + other);
        } else {
            total = (total.0 + other, total.1 + helped);
        }
    }
    total
}

/// AR-DF caps for fixed parameters over `mu = [mu1, mu2, mu5, mu6]`.
pub fn ardf_caps(ch: &ChannelConfig, p: &ArdfParams, mu: &[f64]) -> (f64, f64) {
    let G { a1, a2, b1, b2, r12: g, .. } = G::of(ch);
    let (m1, m2, m5, m6) = (mu[0], mu[1], mu[2], mu[3]);
    let (al, be) = (p.alpha, p.beta);
    let sinr = |b: f64, x: f64| b * x / (1.0 + (1.0 - b) * x);
    let sum = |x: f64, a: f64, b: f64| c(x + (1.0 - b) * g + 2.0 * ((1.0 - a) * (1.0 - b) * x * g).sqrt());

    let ra1 = (m2 * c(al[0] * a2)).min(m2 * c(sinr(be[0], b1)) + m1 * c((1.0 - be[1]) * b2));
    let ra2 = (m1 * c(al[1] * a1)).min(m1 * c(sinr(be[1], b2)) + m2 * c((1.0 - be[0]) * b1));
    let ra = (ra1 + ra2).min(m2 * sum(a2, al[0], be[0])).min(m1 * sum(a1, al[1], be[1]));

    let rb1 = (m5 * c(al[2] * b2)).min(m5 * c(sinr(be[2], a1)) + m6 * c((1.0 - be[3]) * a2));
    let rb2 = (m6 * c(al[3] * b1)).min(m6 * c(sinr(be[3], a2)) + m5 * c((1.0 - be[2]) * a1));
    let rb = (rb1 + rb2).min(m5 * sum(b2, al[2], be[2])).min(m6 * sum(b1, al[3], be[3]));
    (ra, rb)
}

/// Degraded-BC rates `(to R1, to R2)` for power split `theta` on the
/// stronger receiver.
fn bc_split(g1: f64, g2: f64, theta: f64) -> (f64, f64) {
    if g1 >= g2 {
        (c(theta * g1), c((1.0 - theta) * g2 / (1.0 + theta * g2)))
    } else {
        (c((1.0 - theta) * g1 / (1.0 + theta * g1)), c(theta * g2))
    }
}

/// One-way `A -> B` MDF rate at `mu = [mu1, mu2, mu3, mu4]`, maximized over
/// `theta_points` broadcast splits. The relay-to-`B` MAC is a polymatroid,
/// so the best use of state 4 is greedy.
pub fn mdf_one_way_rate(a1: f64, a2: f64, b1: f64, b2: f64, mu: &[f64], theta_points: usize) -> f64 {
    let (m1, m2, m3, m4) = (mu[0], mu[1], mu[2], mu[3]);
    (0..theta_points)
        .map(|i| {
            let theta = i as f64 / (theta_points - 1) as f64;
            let (s1, s2) = bc_split(a1, a2, theta);
            let in1 = m1 * c(a1) + m3 * s1;
            let in2 = m2 * c(a2) + m3 * s2;
            let (d1, d2) = (m2 * c(b1), m1 * c(b2));
            let extra = ((in1 - d1).max(0.0).min(m4 * c(b1)) + (in2 - d2).max(0.0).min(m4 * c(b2))).min(m4 * c(b1 + b2));
            in1.min(d1) + in2.min(d2) + extra
        })
        .fold(0.0, f64::max)
}

/// Solves the square system `m x = rhs` by Gaussian elimination with partial
/// pivoting; `None` when singular.
fn solve_square(mut m: Vec<Vec<f64>>, mut rhs: Vec<f64>) -> Option<Vec<f64>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs()))?;
        if m[piv][col].abs() < 1e-10 {
            return None;
        }
        m.swap(col, piv);
        rhs.swap(col, piv);
        for r in 0..n {
            if r != col {
                let f = m[r][col] / m[col][col];
                if f != 0.0 {
                    let pivot = m[col].clone();
                    for (v, p) in m[r].iter_mut().zip(&pivot).skip(col) {
                        *v -= f * p;
                    }
                    rhs[r] -= f * rhs[col];
                }
            }
        }
    }
    Some((0..n).map(|i| rhs[i] / m[i][i]).collect())
}

/// Every basic solution: pick `n` tight constraints among the rows and the
/// sign bounds (equality rows always tight), keep the feasible ones.
/// Returns the best objective, or `None` when no vertex is feasible.
pub fn vertex_oracle(lp: &LinearProgram) -> Option<f64> {
    let n = lp.num_vars;
    let mut pool: Vec<(Vec<f64>, f64)> = lp.leq.iter().map(|r| (r.coeffs.clone(), r.bound)).collect();
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        pool.push((e, 0.0));
    }
    let need = n.checked_sub(lp.eq.len())?;
    let mut best: Option<f64> = None;
    let mut pick: Vec<usize> = (0..need).collect();
    loop {
        let mut m: Vec<Vec<f64>> = lp.eq.iter().map(|r| r.coeffs.clone()).collect();
        let mut rhs: Vec<f64> = lp.eq.iter().map(|r| r.bound).collect();
        for &i in &pick {
            m.push(pool[i].0.clone());
            rhs.push(pool[i].1);
        }
        if let Some(x) = solve_square(m, rhs) {
            if lp.residual(&x) <= 1e-9 {
                let v = lp.value_at(&x);
                best = Some(best.map_or(v, |b: f64| b.max(v)));
            }
        }
        // Next `need`-subset of the pool in lexicographic order.
        let mut i = need;
        loop {
            if i == 0 {
                return best;
            }
            i -= 1;
            if pick[i] < pool.len() - need + i {
                pick[i] += 1;
                for j in i + 1..need {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
        if need == 0 {
            return best;
        }
    }
}

/// Random LP with `2..=8` variables and at most 12 rows. Leq-only programs
/// carry a budget row so they stay bounded; about a third get an equality.
pub fn random_lp(rng: &mut ChaCha8Rng) -> LinearProgram {
    let n = rng.gen_range(2..=8);
    let with_eq = rng.gen_bool(0.35);
    let m = rng.gen_range(1..=if with_eq { 10 } else { 11 });
    let mut lp = LinearProgram::new(n);
    lp.objective = (0..n).map(|_| rng.gen_range(-1.0..2.0)).collect();
    for _ in 0..m {
        lp.leq.push(Constraint {
            coeffs: (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
            bound: rng.gen_range(0.2..2.0),
        });
    }
    lp.leq.push(Constraint { coeffs: vec![1.0; n], bound: rng.gen_range(1.0..10.0) });
    if with_eq {
        lp.eq.push(Constraint {
            coeffs: (0..n).map(|_| rng.gen_range(0.0..1.0)).collect(),
            bound: rng.gen_range(-0.5..1.5),
        });
    }
    lp
}
