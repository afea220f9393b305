//! The reduction cap is process-wide, so this runs in its own test binary.

use gradlift::report::{parse_job, run_analysis, Section};

#[test]
fn reduction_cap_gives_capped_sections() {
    let spec =
        parse_job("ring Q[x,y,z]; ideal x^3 - y^5 + z^7, x*y*z - z^4; analyze betti, gin, sym; cap reductions 3;")
            .unwrap();
    let r = run_analysis(&spec).unwrap();
    assert!(r.capped());
    assert!(r.tangent_cone.is_capped());
    assert!(r.betti.as_ref().unwrap().is_capped());
    assert!(matches!(r.sym, Some(Section::Capped(_))));
    assert!(r.to_json().contains("\"capped\""));
}
