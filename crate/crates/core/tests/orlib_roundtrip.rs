use proptest::prelude::*;

use wfc_setcover::baselines::greedy;
use wfc_setcover::generate::small_instance;
use wfc_setcover::orlib::{
    format_solution, parse_orlib, parse_solution, read_instance, verify_solution, write_orlib, OrlibFormat,
};
use wfc_setcover::{Cover, Instance};

fn same_structure(a: &Instance, b: &Instance) -> bool {
    a.universe_size() == b.universe_size()
        && a.num_sets() == b.num_sets()
        && (0..a.num_sets()).all(|s| a.elements_of(s) == b.elements_of(s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn write_then_parse_is_identity(n in 1usize..40, m in 1usize..60, density in 0.05f64..0.5, seed in any::<u64>()) {
        let inst = small_instance(n, m, density, seed);
        prop_assert!(inst.audit_transpose());
        for format in [OrlibFormat::RowMajor, OrlibFormat::ColumnMajor] {
            let text = write_orlib(&inst, format);
            let back = parse_orlib(text.as_bytes(), Some(format), inst.name()).unwrap();
            prop_assert!(same_structure(&inst, &back));
            prop_assert!(back.audit_transpose());
        }
    }

    #[test]
    fn is_cover_iff_nothing_uncovered(n in 1usize..30, m in 1usize..30, seed in any::<u64>(), picks in prop::collection::vec(any::<prop::sample::Index>(), 0..10)) {
        let inst = small_instance(n, m, 0.2, seed);
        let mut selected: Vec<usize> = picks.iter().map(|i| i.index(inst.num_sets())).collect();
        selected.sort_unstable();
        selected.dedup();
        let cover = Cover::new(inst.name(), selected.clone()).unwrap();
        let uncovered = inst.uncovered_count(&selected).unwrap();
        prop_assert_eq!(inst.is_cover(&cover).unwrap(), uncovered == 0);
        let report = verify_solution(&inst, &selected);
        prop_assert_eq!(report.uncovered.len(), uncovered);
        prop_assert_eq!(report.feasible, uncovered == 0);
    }
}

#[test]
fn solution_text_round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let inst = small_instance(30, 40, 0.15, 4);
    let path = dir.path().join("scpx1.txt");
    std::fs::write(&path, write_orlib(&inst, OrlibFormat::RowMajor)).unwrap();
    let loaded = read_instance(&path, None).unwrap();
    assert_eq!(loaded.name(), "scpx1");
    let cover = greedy(&loaded);
    let text = format_solution(&loaded, cover.selected());
    assert_eq!(parse_solution(&text, &loaded).unwrap(), cover.selected());
    assert!(verify_solution(&loaded, cover.selected()).feasible);
}

#[test]
fn missing_file_error_names_the_path() {
    let err = read_instance(std::path::Path::new("/nonexistent/scp41.txt"), None).unwrap_err();
    assert!(err.to_string().contains("/nonexistent/scp41.txt"), "{err}");
}
