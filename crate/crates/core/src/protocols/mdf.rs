//! Multihop decode-and-forward.
//!
//! One-way MDF from `A` to `B` uses states 1–4: the two alternating-path
//! states 1 and 2, a broadcast from `A` to both relays (state 3) and a
//! multiple access from both relays to `B` (state 4). The two-way protocol
//! time-shares the two one-way protocols, so its region is the triangle
//! under the segment joining the two one-way rates.

use crate::channel::{cap, ChannelConfig, HalfDuplexState};
use crate::cutset::Direction;
use crate::linprog::{self, LpBuilder};
use crate::protocols::{RatePair, StateSchedule, SupportPoint};
use crate::{ray, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MdfOptions {
    /// Number of superposition power splits tried for the state-3 broadcast.
    pub theta_points: usize,
}

impl Default for MdfOptions {
    fn default() -> Self {
        Self { theta_points: 101 }
    }
}

/// Per-use rates `(to R1, to R2)` of the degraded Gaussian broadcast from `A`
/// when a fraction `theta` of the power carries the stronger relay's layer.
pub fn broadcast_split(gamma_1: f64, gamma_2: f64, theta: f64) -> (f64, f64) {
    let (strong, weak) = if gamma_1 >= gamma_2 { (gamma_1, gamma_2) } else { (gamma_2, gamma_1) };
    let rs = cap(theta * strong);
    let rw = cap((1.0 - theta) * weak / (1.0 + theta * weak));
    if gamma_1 >= gamma_2 {
        (rs, rw)
    } else {
        (rw, rs)
    }
}

/// Best one-way `A -> B` MDF rate for a fixed broadcast split.
fn one_way_fixed_split(ch: &ChannelConfig, bc: (f64, f64)) -> Result<(f64, [f64; 4])> {
    let mut lp = LpBuilder::new();
    let [mu1, mu2, mu3, mu4, f1, f2, m1, m2] = lp.vars();
    let (a1, a2, b1, b2) = (ch.gamma_a1(), ch.gamma_a2(), ch.gamma_b1(), ch.gamma_b2());
    // Reception at the relays.
    lp.leq(&[(f1, 1.0), (mu1, -cap(a1)), (mu3, -bc.0)], 0.0);
    lp.leq(&[(f2, 1.0), (mu2, -cap(a2)), (mu3, -bc.1)], 0.0);
    // Delivery to B: R1 talks in state 2, R2 in state 1, both in state 4.
    lp.leq(&[(f1, 1.0), (mu2, -cap(b1)), (m1, -1.0)], 0.0);
    lp.leq(&[(f2, 1.0), (mu1, -cap(b2)), (m2, -1.0)], 0.0);
    lp.leq(&[(m1, 1.0), (mu4, -cap(b1))], 0.0);
    lp.leq(&[(m2, 1.0), (mu4, -cap(b2))], 0.0);
    lp.leq(&[(m1, 1.0), (m2, 1.0), (mu4, -cap(b1 + b2))], 0.0);
    lp.eq(&[(mu1, 1.0), (mu2, 1.0), (mu3, 1.0), (mu4, 1.0)], 1.0);
    lp.maximize(&[(f1, 1.0), (f2, 1.0)]);
    let sol = linprog::solve(&lp.build())?;
    if !sol.is_optimal() {
        return Err(Error::Unsolved { what: "one-way MDF", status: sol.status.as_str() });
    }
    let x = &sol.assignment;
    Ok((sol.objective_value, [x[mu1.0], x[mu2.0], x[mu3.0], x[mu4.0]]))
}

/// One-way MDF rate in `direction` and the optimizing schedule (states 1–4
/// for `A -> B`, 5–8 for `B -> A`). Extra links are ignored.
pub fn mdf_one_way(channel: &ChannelConfig, direction: Direction, opts: MdfOptions) -> Result<(f64, StateSchedule)> {
    if opts.theta_points < 2 {
        return Err(Error::InvalidArgument("MDF needs at least two broadcast splits"));
    }
    let ch = match direction {
        Direction::AToB => *channel,
        Direction::BToA => channel.swapped(),
    };
    let mut best: Option<(f64, [f64; 4])> = None;
    for i in 0..opts.theta_points {
        let theta = i as f64 / (opts.theta_points - 1) as f64;
        let bc = broadcast_split(ch.gamma_a1(), ch.gamma_a2(), theta);
        let cand = one_way_fixed_split(&ch, bc)?;
        if best.map_or(true, |b| cand.0 > b.0 + 1e-12) {
            best = Some(cand);
        }
    }
    let (rate, mu) = best.expect("at least two splits");
    let schedule = StateSchedule::from_pairs((1u8..=4).zip(mu).map(|(id, m)| match direction {
        Direction::AToB => (id, m),
        Direction::BToA => (HalfDuplexState::of(id).mirrored().id(), m),
    }));
    Ok((rate, schedule))
}

/// The two one-way MDF operating points that span the two-way region.
#[derive(Debug, Clone, PartialEq)]
pub struct MdfTwoWay {
    pub rate_a: f64,
    pub schedule_a: StateSchedule,
    pub rate_b: f64,
    pub schedule_b: StateSchedule,
}

impl MdfTwoWay {
    /// Point where ray `k` crosses the segment between the axis points.
    pub fn support(&self, k: f64) -> Result<SupportPoint> {
        ray::check_ratio(k)?;
        let (rates, lambda) = ray::segment_point(self.rate_a, self.rate_b, k);
        let schedule = if rates.sum() == 0.0 && self.rate_a <= 0.0 && self.rate_b <= 0.0 {
            self.schedule_a.clone()
        } else {
            self.schedule_a.mix(lambda, &self.schedule_b)
        };
        Ok(SupportPoint { k, rates, schedule })
    }

    pub fn axis_points(&self) -> (RatePair, RatePair) {
        (RatePair::new(self.rate_a, 0.0), RatePair::new(0.0, self.rate_b))
    }
}

pub fn mdf_two_way_region(channel: &ChannelConfig, opts: MdfOptions) -> Result<MdfTwoWay> {
    let (rate_a, schedule_a) = mdf_one_way(channel, Direction::AToB, opts)?;
    let (rate_b, schedule_b) = mdf_one_way(channel, Direction::BToA, opts)?;
    Ok(MdfTwoWay { rate_a, schedule_a, rate_b, schedule_b })
}

pub fn mdf_two_way_support(channel: &ChannelConfig, k: f64, opts: MdfOptions) -> Result<SupportPoint> {
    mdf_two_way_region(channel, opts)?.support(k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::Preset;

    #[test]
    fn channel_one_equalizing_schedule() {
        let ch = Preset::I.channel();
        let (rate, sched) = mdf_one_way(&ch, Direction::AToB, MdfOptions::default()).unwrap();
        // Closed form: mu1 C(a1) = mu2 C(b1), mu1 + mu2 = 1.
        let (ca1, cb1) = (cap(ch.gamma_a1()), cap(ch.gamma_b1()));
        let mu1 = cb1 / (ca1 + cb1);
        let expected = 2.0 * mu1 * ca1;
        assert!((rate - expected).abs() < 1e-9);
        assert!((rate - 4.0987).abs() < 1e-3);
        assert!((sched.get(1) - 0.4076).abs() < 1e-3);
        assert!((sched.get(2) - 0.5924).abs() < 1e-3);
        assert!(sched.get(3).abs() < 1e-9 && sched.get(4).abs() < 1e-9);
    }

    #[test]
    fn reverse_direction_uses_mirrored_states() {
        let ch = Preset::III.channel();
        let (_, sched) = mdf_one_way(&ch, Direction::BToA, MdfOptions::default()).unwrap();
        assert!(sched.iter().all(|(id, _)| (5..=8).contains(&id)));
        assert!(sched.is_distribution(1e-9));
    }

    #[test]
    fn two_way_midpoint() {
        let r = mdf_two_way_region(&Preset::I.channel(), MdfOptions::default()).unwrap();
        assert!((r.rate_a - r.rate_b).abs() < 1e-9);
        let p = r.support(1.0).unwrap();
        assert!((p.rates.ra - 2.049).abs() < 1e-3 && (p.rates.rb - 2.049).abs() < 1e-3);
        assert!(p.schedule.is_distribution(1e-9));
        let p0 = r.support(0.0).unwrap();
        assert_eq!(p0.rates.ra, r.rate_a);
        let pinf = r.support(f64::INFINITY).unwrap();
        assert_eq!(pinf.rates.rb, r.rate_b);
    }

    #[test]
    fn zero_channel() {
        let ch = ChannelConfig::plain(0.0, 0.0, 0.0, 0.0).unwrap();
        let r = mdf_two_way_region(&ch, MdfOptions::default()).unwrap();
        for k in [0.0, 1.0, f64::INFINITY] {
            assert_eq!(r.support(k).unwrap().rates.sum(), 0.0);
        }
    }

    #[test]
    fn broadcast_split_endpoints() {
        let (r1, r2) = broadcast_split(10.0, 3.0, 0.0);
        assert_eq!(r1, 0.0);
        assert!((r2 - cap(3.0)).abs() < 1e-15);
        let (r1, r2) = broadcast_split(3.0, 10.0, 1.0);
        assert!((r2 - cap(10.0)).abs() < 1e-15);
        assert_eq!(r1, 0.0);
    }

    #[test]
    fn needs_two_splits() {
        let opts = MdfOptions { theta_points: 1 };
        assert!(mdf_one_way(&Preset::I.channel(), Direction::AToB, opts).is_err());
    }
}
