mod common;

use diamond_core::regions::{contains, default_k_grid, grid_oracle, hull_of, sweep_kind, GeneratorOptions};
use diamond_core::{Preset, Protocol, RateRegion, RegionKind};

fn region(kind: RegionKind, preset: Preset) -> RateRegion {
    sweep_kind(kind, &preset.channel(), &default_k_grid(), GeneratorOptions::default()).unwrap()
}

#[test]
fn hull_only_grows() {
    let mdf = region(RegionKind::Protocol(Protocol::Mdf), Preset::II);
    let bc = region(RegionKind::Protocol(Protocol::CfBc), Preset::II);
    let cmac = region(RegionKind::Protocol(Protocol::CfCmac), Preset::II);
    let small = hull_of(&[mdf.clone(), bc.clone()]).unwrap();
    let big = hull_of(&[mdf, bc, cmac]).unwrap();
    for (s, b) in small.samples.iter().zip(&big.samples) {
        assert_eq!(s.k, b.k);
        assert!(b.rates.sum() >= s.rates.sum() - 1e-12);
    }
}

#[test]
fn hull_stays_inside_outer_bound() {
    for preset in [Preset::I, Preset::II, Preset::III] {
        let outer = region(RegionKind::Outer, preset);
        let hull = hull_of(&[
            region(RegionKind::Protocol(Protocol::Mdf), preset),
            region(RegionKind::Protocol(Protocol::CfCmac), preset),
        ])
        .unwrap();
        assert!(contains(&outer, &hull, 1e-6).unwrap().passed(), "{}", preset.name());
    }
}

#[test]
fn cmac_region_contains_bc_region() {
    for preset in [Preset::I, Preset::II, Preset::III] {
        let cmac = region(RegionKind::Protocol(Protocol::CfCmac), preset);
        let bc = region(RegionKind::Protocol(Protocol::CfBc), preset);
        let report = contains(&cmac, &bc, 1e-9).unwrap();
        assert!(report.passed(), "{}: worst margin {}", preset.name(), report.worst_margin());
        // And the reverse fails somewhere on Channel I.
        if preset == Preset::I {
            assert!(!contains(&bc, &cmac, 1e-9).unwrap().passed());
        }
    }
}

#[test]
fn oracle_refinement_is_monotone() {
    let ch = Preset::III.channel();
    for k in [0.0, 0.7, 1.0, 3.0, f64::INFINITY] {
        let mut last = f64::NEG_INFINITY;
        for res in [10, 20, 40, 80] {
            let v = grid_oracle(|mu| common::cf_bc_caps(&ch, mu), &[9, 10, 11, 12], res, k).unwrap().rates.sum();
            assert!(v >= last - 1e-12, "k {k} res {res}: {v} < {last}");
            last = v;
        }
    }
}

#[test]
fn sweep_reports_the_failing_ratio() {
    let err = sweep_kind(RegionKind::Outer, &Preset::I.channel(), &[-1.0], GeneratorOptions::default()).unwrap_err();
    assert!(err.to_string().contains("k grid"), "{err}");
}
