//! Randomized law checks shared by the property tests and the acceptance run.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, OnceLock};

use cdlat_core::catalog::catalog;
use cdlat_core::families::direct_product;
use cdlat_core::harness::{
    cd_closed, class_count_bound, max_measure_characterization, min_measure_characterization,
    uniform_centralizers,
};
use cdlat_core::lattice::{centralizer_order, conjugate_subgroup};
use cdlat_core::measure::measure;
use cdlat_core::structure::{is_maximal_class, prime_power_order};
use cdlat_core::{parse_spec, Analysis, Bitset, Elem, Engine, Limits, Subgroup};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub fn engine() -> &'static Engine {
    static ENGINE: OnceLock<Engine> = OnceLock::new();
    ENGINE.get_or_init(Engine::default)
}

pub fn analyze(spec: &str) -> Arc<Analysis> {
    let spec = parse_spec(spec).unwrap_or_else(|e| panic!("{spec}: {e}"));
    engine().analyze_spec(&spec).unwrap()
}

fn buildable(s: &str) -> bool {
    parse_spec(s).and_then(|sp| sp.build(&Limits::default())).is_ok()
}

const SMALL: [&str; 12] = ["C1", "C2", "C3", "C4", "C5", "C6", "D6", "D8", "Q8", "S3", "Ab(2,2)", "D10"];

const NAMED: [&str; 12] = [
    "S3", "S4", "A4", "A5", "Q8", "SD16", "M16", "Heis27", "Jp(3,3)", "Q16", "SD32", "M27",
];

/// Group specs drawn from every constructor family.
pub fn group_spec() -> impl Strategy<Value = String> {
    let catalog_small: Vec<String> = catalog()
        .iter()
        .filter(|e| e.spec.static_order().is_some_and(|n| n <= 96))
        .map(|e| e.spec.render())
        .collect();
    prop_oneof![
        (1u64..=36).prop_map(|n| format!("C{n}")),
        (2u64..=30).prop_map(|n| format!("D{}", 2 * n)),
        (2u64..=12).prop_map(|m| format!("Q{}", 4 * m)),
        prop::collection::vec(2u64..=6, 1..=3).prop_map(|d| {
            let d: Vec<String> = d.iter().map(u64::to_string).collect();
            format!("Ab({})", d.join(","))
        }),
        (3u64..=21, 2u64..=8, 2u64..=20)
            .prop_map(|(m, n, r)| format!("(C{m} : C{n} @ {})", r % m))
            .prop_filter("valid action", |s| buildable(s)),
        prop::sample::select(NAMED.to_vec()).prop_map(String::from),
        (prop::sample::select(SMALL.to_vec()), prop::sample::select(SMALL.to_vec()))
            .prop_map(|(a, b)| format!("{a} x {b}")),
        prop::sample::select(catalog_small),
    ]
}

/// Pairs whose direct product has order at most 24.
pub fn product_pair() -> impl Strategy<Value = (String, String)> {
    let small: Vec<&'static str> = vec![
        "C1", "C2", "C3", "C4", "C5", "C6", "C8", "C12", "Ab(2,2)", "S3", "D8", "Q8", "D10", "D12", "A4",
        "Q12", "(C7 : C3 @ 2)",
    ];
    (prop::sample::select(small.clone()), prop::sample::select(small))
        .prop_filter("order at most 24", |(a, b)| {
            let order = |s: &str| parse_spec(s).unwrap().static_order().unwrap();
            order(a) * order(b) <= 24
        })
        .prop_map(|(a, b)| (a.to_string(), b.to_string()))
}

/// Measure invariance under conjugation by `x`, `|Im| ≥ 2`, the class-count
/// bound and closure of the CD lattice.
pub fn check_group(spec: &str, x_seed: usize) -> Result<(), TestCaseError> {
    let a = analyze(spec);
    let g = &a.group;
    let x = (x_seed % g.order()) as Elem;
    for (i, h) in a.lattice.subgroups().iter().enumerate() {
        let hx = conjugate_subgroup(g, h, x);
        let j = a.lattice.index_of(&hx);
        prop_assert!(j.is_some(), "{spec}: conjugate of subgroup {i} missing");
        prop_assert_eq!(a.report.measure_of(j.unwrap()), a.report.measure_of(i), "{}: conjugation by {}", spec, x);
        prop_assert_eq!(measure(g, &hx), a.report.measure_of(i));
    }
    if g.order() > 1 {
        prop_assert!(a.im_count() >= 2, "{spec}: |Im| = {}", a.im_count());
    }
    if let Some(ok) = class_count_bound(&a) {
        prop_assert!(ok, "{spec}: class-count bound");
    }
    prop_assert!(cd_closed(&a), "{spec}: CD lattice not closed");
    Ok(())
}

/// `m_{H×K}(A×B) = m_H(A)·m_K(B)` over every pair of subgroups.
pub fn check_product_law(h_spec: &str, k_spec: &str) -> Result<(), TestCaseError> {
    let h = analyze(h_spec);
    let k = analyze(k_spec);
    let g = direct_product(&h.group, &k.group, usize::MAX).unwrap();
    let kn = k.group.order();
    for (i, a) in h.lattice.subgroups().iter().enumerate() {
        for (j, b) in k.lattice.subgroups().iter().enumerate() {
            let members = Bitset::from_iter(
                g.order(),
                a.elements().flat_map(|x| b.elements().map(move |y| x as usize * kn + y as usize)),
            );
            let ab = Subgroup::from_members(&g, members).unwrap();
            let m = (ab.size() * centralizer_order(&g, &ab)) as u64;
            prop_assert_eq!(
                m,
                h.report.measure_of(i) * k.report.measure_of(j),
                "{} x {}: subgroups {} and {}",
                h_spec,
                k_spec,
                i,
                j
            );
        }
    }
    Ok(())
}

/// Min/max measure characterizations on the non-abelian catalog p-groups
/// of order 2^4..2^7 and 3^4. Returns how many groups were checked.
pub fn p_group_sweep() -> Result<usize, String> {
    let mut checked = 0;
    for entry in catalog() {
        let Some(n) = entry.spec.static_order() else { continue };
        let in_scope = matches!(n, 16 | 32 | 64 | 128 | 81);
        if !in_scope {
            continue;
        }
        let a = engine().analyze_spec(&entry.spec).map_err(|e| format!("{}: {e}", entry.name))?;
        if a.group.is_abelian() {
            continue;
        }
        let min = min_measure_characterization(&a);
        let max = max_measure_characterization(&a);
        if min != Some(true) || max != Some(true) {
            return Err(format!("{}: min {min:?}, max {max:?}", entry.name));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Uniform elements of maximal-class catalog entries have centralizers of
/// order p². Returns how many groups were checked.
pub fn uniform_sweep() -> Result<usize, String> {
    let mut checked = 0;
    for entry in catalog() {
        if entry.spec.static_order().is_none_or(|n| n > 3125) {
            continue;
        }
        let g = engine().build(&entry.spec).map_err(|e| format!("{}: {e}", entry.name))?;
        let Some((_, k)) = prime_power_order(&g) else { continue };
        if k < 4 || !is_maximal_class(&g) {
            continue;
        }
        if uniform_centralizers(&g) != Some(true) {
            return Err(format!("{}: uniform centralizer order is not p^2", entry.name));
        }
        checked += 1;
    }
    Ok(checked)
}

/// Runs both randomized properties with a fixed seed and returns the
/// number of instances checked.
pub fn run_randomized(group_cases: u32, product_cases: u32) -> Result<usize, String> {
    let count = AtomicUsize::new(0);
    let config = |cases| Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let rng = || TestRng::deterministic_rng(RngAlgorithm::ChaCha);
    TestRunner::new_with_rng(config(group_cases), rng())
        .run(&(group_spec(), any::<usize>()), |(spec, x)| {
            count.fetch_add(1, Ordering::Relaxed);
            check_group(&spec, x)
        })
        .map_err(|e| e.to_string())?;
    TestRunner::new_with_rng(config(product_cases), rng())
        .run(&product_pair(), |(a, b)| {
            count.fetch_add(1, Ordering::Relaxed);
            check_product_law(&a, &b)
        })
        .map_err(|e| e.to_string())?;
    Ok(count.into_inner())
}
