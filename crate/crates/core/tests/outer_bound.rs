mod common;

use common::{Block, PLAIN_STATES};
use diamond_core::cutset::{self, Direction};
use diamond_core::linprog;
use diamond_core::regions::grid_oracle;
use diamond_core::{ChannelConfig, Preset};

fn check_rows_match(ch: &ChannelConfig) {
    let (printed, states) = common::printed_block(ch);
    let generated = cutset::outer_rows(ch);
    assert_eq!(generated.len(), printed.len());
    let mut used = vec![false; generated.len()];
    for p in &printed {
        let dir = if p.to_b { Direction::AToB } else { Direction::BToA };
        let coeff = |s: u8| p.terms.iter().filter(|(x, _)| *x == s).map(|(_, c)| c).sum::<f64>();
        let hit = generated.iter().enumerate().position(|(i, g)| {
            !used[i] && g.direction == dir && states.iter().all(|&s| (g.coeff(s) - coeff(s)).abs() <= 1e-12)
        });
        let i = hit.unwrap_or_else(|| panic!("no generated row matches {p:?} on {ch:?}"));
        used[i] = true;
        // Nothing outside the variant's state list.
        assert!(generated[i].terms.iter().all(|(s, c)| states.contains(s) || *c == 0.0));
    }
}

#[test]
fn generated_rows_match_printed_blocks() {
    let mut rng = common::rng(11);
    for _ in 0..50 {
        check_rows_match(&common::random_plain(&mut rng));
        check_rows_match(&common::random_direct(&mut rng));
        check_rows_match(&common::random_interfering(&mut rng));
    }
    for p in Preset::ALL {
        check_rows_match(&p.channel());
    }
}

#[test]
fn channel_one_frozen_values() {
    let ch = Preset::I.channel();
    let one_way = cutset::outer_support(&ch, 0.0).unwrap();
    let (ca1, cb1) = (common::c(ch.gamma_a1()), common::c(ch.gamma_b1()));
    assert!((one_way.rates.ra - 2.0 * ca1 * cb1 / (ca1 + cb1)).abs() < 1e-9);
    assert!((one_way.rates.ra - 4.0987).abs() < 1e-3);

    // Grid oracle at resolution 100 over the six states gave r* = 2.892886;
    // the LP optimum is frozen alongside it.
    const R_STAR_ORACLE_100: f64 = 2.892_885_734;
    const LP_FROZEN: f64 = 2.909_240_256;
    let sym = cutset::outer_support(&ch, 1.0).unwrap().rates;
    assert!((sym.ra - sym.rb).abs() < 1e-12);
    assert!((sym.ra - LP_FROZEN).abs() < 1e-6, "{sym:?}");
    assert!(sym.ra >= R_STAR_ORACLE_100 - 1e-9 && sym.ra - R_STAR_ORACLE_100 < 0.02);

    let block = Block::new(&common::plain_block(&ch), &PLAIN_STATES);
    let coarse = grid_oracle(|mu| block.caps(mu), &PLAIN_STATES, 50, 1.0).unwrap();
    assert!(coarse.rates.ra <= R_STAR_ORACLE_100 + 1e-9);
    assert!(sym.ra - coarse.rates.ra < 0.05);
}

#[test]
fn lp_solutions_are_feasible() {
    let mut rng = common::rng(12);
    for i in 0..30 {
        let ch = match i % 3 {
            0 => common::random_plain(&mut rng),
            1 => common::random_direct(&mut rng),
            _ => common::random_interfering(&mut rng),
        };
        for k in [0.0, 0.25, 1.0, 4.0, f64::INFINITY] {
            let lp = cutset::build_outer_lp(&ch, k).unwrap();
            let sol = linprog::solve(&lp.lp).unwrap();
            assert!(sol.is_optimal());
            assert!(sol.max_residual <= 1e-9, "residual {}", sol.max_residual);
            let point = lp.solve().unwrap();
            assert!(point.schedule.is_distribution(1e-9));
            let states = cutset::outer_states(ch.variant());
            assert!(point.schedule.iter().all(|(s, _)| states.contains(&s)));
        }
    }
}

#[test]
fn support_grows_with_every_snr() {
    let mut rng = common::rng(13);
    for _ in 0..20 {
        let ch = common::random_interfering(&mut rng);
        let base = [ch.gamma_a1(), ch.gamma_a2(), ch.gamma_b1(), ch.gamma_b2()];
        let g12 = ch.gamma_12().unwrap();
        for bump in 0..5 {
            let mut g = base;
            let mut g12b = g12;
            if bump < 4 {
                g[bump] *= 1.5;
            } else {
                g12b *= 1.5;
            }
            let up = ChannelConfig::interfering_relays(g[0], g[1], g[2], g[3], g12b).unwrap();
            for k in [0.0, 0.3, 1.0, 3.0, f64::INFINITY] {
                let before = cutset::outer_support(&ch, k).unwrap().rates.sum();
                let after = cutset::outer_support(&up, k).unwrap().rates.sum();
                assert!(after >= before - 1e-9, "bump {bump} k {k}: {after} < {before}");
            }
        }
    }
}

#[test]
fn extra_links_only_enlarge_the_bound() {
    let plain = Preset::I.channel();
    let direct = Preset::DirectFig6.channel();
    for k in [0.0, 0.5, 1.0, 2.0, f64::INFINITY] {
        let p = cutset::outer_support(&plain, k).unwrap().rates.sum();
        let d = cutset::outer_support(&direct, k).unwrap().rates.sum();
        assert!(d >= p - 1e-9, "k {k}: {d} < {p}");
    }
}
