use rasp_core::devtools::suites;

fn ok(name: &str, r: suites::SuiteResult) {
    match r {
        Ok(n) => eprintln!("{name}: {n} programs"),
        Err(e) => panic!("{name}: {e}"),
    }
}

#[test]
fn fages_equivalence() {
    ok("fages", suites::fages(500, 11));
}

#[test]
fn fixpoint_characterizations() {
    ok("fixpoints", suites::fixpoints(300, 12));
}

#[test]
fn gl_answer_sets_are_rational() {
    ok("gl_subset", suites::gl_subset(500, 13));
}

#[test]
fn normal_semantics_coincide() {
    ok("normal_equal", suites::normal_equal(500, 14));
}

#[test]
fn world_views_agree() {
    ok("world_views", suites::world_views(200, 15));
}
