//! Regenerates the shipped JSON fixtures in data/ from the library fixtures.
//! Run manually after changing the serialization layer:
//!     cargo test -p tropjac --test fixture_gen -- --ignored

use tropjac::curve::fixtures::{tate_cycle, theta_real, theta_symbolic};
use tropjac::io::{
    curve_to_file, hom_to_file, order_to_file, to_json_string, HomFile,
};
use tropjac::monodromy::MonodromyHom;
use tropjac::rat::LatVec;

fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

#[test]
#[ignore]
fn regenerate_fixtures() {
    let dir = data_dir();
    std::fs::create_dir_all(&dir).unwrap();
    let write = |name: &str, text: String| {
        std::fs::write(dir.join(name), text).unwrap();
    };

    write("theta.json", to_json_string(&curve_to_file(&theta_symbolic())));
    write(
        "theta-535.json",
        to_json_string(&curve_to_file(&theta_real(5, 3, 5))),
    );
    write("tate-4.json", to_json_string(&curve_to_file(&tate_cycle(4))));
    write(
        "order-n3.json",
        to_json_string(&order_to_file(
            &theta_symbolic().monoid().totalize().unwrap(),
        )),
    );
    // A bounded hom on the symbolic theta graph: the two cycle lengths.
    let theta = theta_symbolic();
    let basis = theta.cycle_basis().unwrap();
    let mu = MonodromyHom {
        values: basis.cycles.iter().map(|c| theta.cycle_length(c)).collect(),
    };
    write("hom-theta-lengths.json", to_json_string(&hom_to_file(&mu)));
    // An unbounded hom on the same curve (delta_3 on the first cycle).
    let bad = MonodromyHom {
        values: vec![LatVec::from_ints(&[0, 0, 1]), LatVec::from_ints(&[0, 0, 0])],
    };
    write("hom-theta-unbounded.json", to_json_string(&hom_to_file(&bad)));
    // The zero hom, rank 3.
    write(
        "hom-theta-zero.json",
        to_json_string(&hom_to_file(&MonodromyHom::zero(2, 3))),
    );
    let _ = HomFile { format: 1, values: vec![] };
}

#[test]
fn fixtures_parse_and_match_the_library() {
    use tropjac::io::{curve_from_file, from_json_str, CurveFile};
    let dir = data_dir();
    for (name, expect) in [
        ("theta.json", theta_symbolic()),
        ("theta-535.json", theta_real(5, 3, 5)),
        ("tate-4.json", tate_cycle(4)),
    ] {
        let text = std::fs::read_to_string(dir.join(name)).unwrap();
        let parsed: CurveFile = from_json_str(&text).unwrap();
        let curve = curve_from_file(&parsed).unwrap();
        assert_eq!(curve.vertex_names(), expect.vertex_names(), "{}", name);
        assert_eq!(curve.edges(), expect.edges(), "{}", name);
        assert_eq!(curve.pinned_basis(), expect.pinned_basis(), "{}", name);
        // On-disk form is canonical.
        assert_eq!(to_json_string(&curve_to_file(&curve)), text, "{}", name);
    }
}
