use dehnkit_core::coords::{boundary_restriction, compatible, euler_characteristic};
use dehnkit_core::enumerate::{
    boundary_slope_set, carrier_slopes_check, enumerate_fundamental, enumerate_vertices, scan, slopes_within,
    CarrierVerdict, EnumOptions,
};
use dehnkit_core::filling::fill;
use dehnkit_core::layered::{build_lst, pad_lst, LayeredTorus};
use dehnkit_core::reports::{candidates_with, emit, Format, Goal, ProvenanceKind, ReportOptions};
use dehnkit_core::surface::summarize_surface;
use dehnkit_core::torus::slopes_up_to_length;
use dehnkit_core::{Error, Mode, NormalCoords, Slope, TorusCurve};
use num_rational::BigRational;

fn nc(v: &[u64]) -> NormalCoords {
    NormalCoords::new(Mode::Normal, v.to_vec()).unwrap()
}

fn slopes_of(lst: &LayeredTorus, mode: Mode) -> Vec<[u64; 3]> {
    let v = enumerate_vertices(lst.tri(), &EnumOptions::new(mode).embedded_only(true)).unwrap();
    boundary_slope_set(lst.tri(), &v, lst.torus()).unwrap().iter().map(|s| s.slope.coords()).collect()
}

#[test]
fn core_vertex_slopes() {
    let core = LayeredTorus::core();
    let mut got = slopes_of(&core, Mode::Normal);
    got.sort();
    assert_eq!(got, vec![[0, 0, 1], [0, 1, 0], [2, 0, 1]]);
}

#[test]
fn core_rays_cover_the_five_surfaces() {
    let core = LayeredTorus::core();
    let rays: Vec<NormalCoords> =
        enumerate_vertices(core.tri(), &EnumOptions::new(Mode::Normal)).unwrap().into_iter().map(|v| v.coords).collect();
    for s in [[1, 1, 1, 1, 0, 0, 0], [1, 0, 0, 1, 1, 0, 0], [0, 1, 1, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 2, 0]] {
        let c = nc(&s);
        let g = s.iter().fold(0, |g, &x| num_integer::Integer::gcd(&g, &x));
        let primitive = nc(&s.map(|x| x / g));
        assert!(
            rays.contains(&primitive) || rays.iter().any(|r| r.dominates(&c)),
            "{c} is not represented"
        );
    }
}

#[test]
fn two_layer_slopes_include_the_annuli() {
    let t2 = LayeredTorus::core().layer(1).unwrap();
    let got = slopes_of(&t2, Mode::Normal);
    assert!(got.contains(&[1, 0, 1]), "{got:?}");
    assert!(got.contains(&[0, 1, 0]), "{got:?}");
}

#[test]
fn layered_slopes_include_meridian() {
    for (p, q) in [(3, 7), (2, 5), (-1, 4)] {
        let lst = build_lst(Slope::from_pq(p, q).unwrap()).unwrap();
        assert!(slopes_of(&lst, Mode::Normal).contains(&lst.meridian().coords()));
    }
}

#[test]
fn carrier_examples() {
    let core = LayeredTorus::core();
    let (tri, torus) = (core.tri(), core.torus());
    let dmu = core.meridian_disk().clone();
    let dtau = core.vertex_disk();
    let v = carrier_slopes_check(tri, &[dmu.clone(), dmu.clone()], torus).unwrap();
    assert_eq!(v, CarrierVerdict::Consistent { slopes: vec![Slope::new(2, 0, 1).unwrap()] });
    let v = carrier_slopes_check(tri, &[dmu.clone(), dtau], torus).unwrap();
    assert_eq!(v, CarrierVerdict::Consistent { slopes: vec![Slope::new(2, 0, 1).unwrap()] });
    let annulus = nc(&[0, 1, 1, 0, 0, 0, 1]);
    assert!(matches!(carrier_slopes_check(tri, &[dmu, annulus], torus), Err(Error::Incompatible(0, 1))));
}

#[test]
fn fundamental_surfaces_of_the_core() {
    let core = LayeredTorus::core();
    let f = enumerate_fundamental(core.tri(), Mode::Normal, None, false).unwrap();
    assert!(f.complete);
    for s in [[1, 1, 1, 1, 0, 0, 0], [1, 0, 0, 1, 1, 0, 0], [0, 1, 1, 0, 0, 0, 1], [0, 0, 0, 0, 0, 1, 0]] {
        assert!(f.members.contains(&s.to_vec()), "{s:?}");
    }
    // the doubled Möbius band is twice a fundamental surface
    assert!(!f.members.contains(&vec![0, 0, 0, 0, 0, 2, 0]));
    let capped = enumerate_fundamental(core.tri(), Mode::Normal, Some(1), false).unwrap();
    assert!(!capped.complete);
}

#[test]
fn slope_lengths_against_scan() {
    // reduced triples with 2(x1+x2+x3) <= 6 and a zero entry, counted by a plain scan
    let mut count = 0;
    for a in 0u64..=3 {
        for b in 0u64..=3 {
            for c in 0u64..=3 {
                let g = num_integer::Integer::gcd(&num_integer::Integer::gcd(&a, &b), &c);
                if 2 * (a + b + c) <= 6 && a.min(b).min(c) == 0 && g == 1 {
                    count += 1;
                }
            }
        }
    }
    assert_eq!(slopes_up_to_length(6).len(), count);
    assert_eq!(slopes_within(&BigRational::from_integer(6.into())).len(), count);
}

#[test]
fn curve_system_via_generic_scan() {
    let core = LayeredTorus::core();
    let m = core.torus().curve_matching_matrix();
    let sols = scan(&m, 6, &dehnkit_core::enumerate::ScanOptions::entries(2)).unwrap();
    assert!(sols.iter().all(|v| v[0] == v[3] && v[1] == v[4] && v[2] == v[5]));
    assert_eq!(sols.len(), 26);
}

#[test]
fn padded_meridian_weight() {
    let core = LayeredTorus::core();
    let p = pad_lst(&core, 5).unwrap();
    assert!(p.size() > 5);
    let w = dehnkit_core::coords::weight(p.tri(), p.meridian_disk());
    assert!(w >= p.size() as u64 + 4);
}

#[test]
fn sphere_from_meridian_filling() {
    let core = LayeredTorus::core();
    let f = fill(core.tri(), core.torus(), core.meridian(), 1).unwrap();
    let c = dehnkit_core::filling::cap_surface(&f, core.meridian_disk()).unwrap();
    assert_eq!(euler_characteristic(f.tri(), &c), 2);
    let twice = dehnkit_core::filling::cap_surface(&f, &core.meridian_disk().scaled(2)).unwrap();
    assert_eq!(boundary_restriction(core.tri(), &core.meridian_disk().scaled(2), core.torus()).unwrap().x, [4, 0, 2]);
    assert!(dehnkit_core::coords::is_matched(f.tri(), &twice).unwrap());
}

#[test]
fn two_layer_lens_report_lists_separating_annuli() {
    let t2 = LayeredTorus::core().layer(1).unwrap();
    let r = candidates_with(t2.tri(), t2.torus(), Goal::Lens, &ReportOptions::default()).unwrap();
    let annuli = &r.lists["separating-annuli"];
    assert!(!annuli.is_empty());
    for a in annuli {
        let slope = TorusCurve { x: a.boundary }.slope();
        let c = r.slopes.iter().find(|c| Some(c.slope) == slope);
        assert!(c.is_some_and(|c| c.provenance.iter().any(|p| p.kind == ProvenanceKind::AnnulusSlope)));
    }
    assert!(annuli.iter().any(|a| a.boundary == [2, 0, 2]), "{annuli:?}");
}

#[test]
fn report_caveats_name_external_steps() {
    let lst = build_lst(Slope::from_pq(1, 3).unwrap()).unwrap();
    let required: [(Goal, &[&str]); 5] = [
        (Goal::Reducible, &["Step 3", "Step 5"]),
        (Goal::Surface, &["Step 5", "Step 6"]),
        (Goal::Haken, &["Algorithm R", "Algorithm S", "Algorithm H"]),
        (Goal::S3, &["3-sphere recognition"]),
        (Goal::Lens, &["lens space recognition", "two solid tori"]),
    ];
    for (goal, needles) in required {
        let r = candidates_with(lst.tri(), lst.torus(), goal, &ReportOptions::default()).unwrap();
        let text = emit(&r, Format::Json);
        for n in needles {
            assert!(r.caveats.iter().any(|c| c.contains(n) && c.contains("external")), "{goal:?} lacks {n}");
        }
        for c in &r.slopes {
            assert!(!c.provenance.is_empty());
        }
        assert!(!text.contains("is S^3\"") && !text.contains("is a lens space\""));
    }
}

#[test]
fn s3_bound_and_shortcut() {
    for (p, q) in [(1, 0), (2, 3), (3, 7)] {
        let lst = build_lst(Slope::from_pq(p, q).unwrap()).unwrap();
        let r = candidates_with(lst.tri(), lst.torus(), Goal::S3, &ReportOptions::default()).unwrap();
        let t = lst.size() as u32;
        let vertex: usize = r
            .slopes
            .iter()
            .filter(|c| c.provenance.iter().any(|p| p.kind == ProvenanceKind::VertexSurface))
            .count();
        assert!(vertex as u64 <= 2 * t as u64 * 3u64.pow(t));
        assert!(r.notes.iter().any(|n| n.starts_with("compressible boundary")));
        assert!(r.slopes.iter().any(|c| c.provenance.iter().any(|p| p.kind == ProvenanceKind::DiskLine)));
    }
}

#[test]
fn summaries_of_paper_surfaces() {
    let t2 = LayeredTorus::core().layer(1).unwrap();
    let dtau = t2.vertex_disk();
    let s = summarize_surface(t2.tri(), &dtau, &[t2.torus().clone()]).unwrap();
    assert!(s.is_disk());
    assert_eq!(s.boundary_curves[0].x, [1, 1, 1]);
    assert!(compatible(t2.tri(), &dtau, t2.meridian_disk()).unwrap());
}
