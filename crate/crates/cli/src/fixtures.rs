//! Golden-fixture suite: one JSON file per pinned value, each carrying the
//! inputs, the expected value, the freshly computed value and a match flag.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use hurwitz_core::hurwitz::{
    hurwitz_character, hurwitz_permutation_oracle, riemann_hurwitz_euler, two_point_sphere_table,
    BranchingData, SurfaceBase,
};
use hurwitz_core::partition::{class_size, zeta};
use hurwitz_core::scalar::Scalar;
use hurwitz_core::weyl::{wick_pair, FockPoly, VarSpace};
use hurwitz_core::Partition;

use crate::CliError;

#[derive(Serialize)]
pub struct Fixture {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub expected: String,
    pub computed: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

fn fixture(
    name: &str,
    inputs: &[(&str, String)],
    expected: impl ToString,
    computed: impl ToString,
) -> Fixture {
    let expected = expected.to_string();
    let computed = computed.to_string();
    Fixture {
        name: name.to_string(),
        inputs: inputs
            .iter()
            .map(|(k, v)| (k.to_string(), v.clone()))
            .collect(),
        matches: expected == computed,
        expected,
        computed,
    }
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn char_value(d: u32, profiles: &[&str], euler: i64) -> Scalar {
    let data = BranchingData::new(
        d,
        profiles.iter().map(|s| p(s)).collect(),
        SurfaceBase::Euler(euler),
    )
    .unwrap();
    hurwitz_character(&data).unwrap()
}

fn oracle_value(d: u32, profiles: &[&str], handles: u32, crosscaps: u32) -> Scalar {
    let data = BranchingData::new(
        d,
        profiles.iter().map(|s| p(s)).collect(),
        SurfaceBase::HandlesCrosscaps { handles, crosscaps },
    )
    .unwrap();
    hurwitz_permutation_oracle(&data).unwrap()
}

pub fn build_fixtures() -> Vec<Fixture> {
    let mut out = vec![
        fixture(
            "zeta_33",
            &[("partition", "[3,3]".into())],
            18,
            zeta(&p("[3,3]")),
        ),
        fixture(
            "class_size_3cycles_s3",
            &[("partition", "[3]".into())],
            2,
            class_size(&p("[3]")),
        ),
        fixture(
            "class_size_transpositions_s3",
            &[("partition", "[2,1]".into())],
            3,
            class_size(&p("[2,1]")),
        ),
        fixture(
            "H1_unbranched_d3",
            &[
                ("degree", "3".into()),
                ("euler", "1".into()),
                ("profiles", "[1,1,1]".into()),
            ],
            "2/3",
            char_value(3, &["[1,1,1]"], 1),
        ),
        fixture(
            "H1_unbranched_d3_oracle",
            &[
                ("degree", "3".into()),
                ("handles", "0".into()),
                ("crosscaps", "1".into()),
            ],
            "2/3",
            oracle_value(3, &[], 0, 1),
        ),
        fixture(
            "H2_3_3",
            &[
                ("degree", "3".into()),
                ("euler", "2".into()),
                ("profiles", "[3]|[3]".into()),
            ],
            "1/3",
            char_value(3, &["[3]", "[3]"], 2),
        ),
        fixture(
            "H2_3_3_oracle",
            &[
                ("degree", "3".into()),
                ("handles", "0".into()),
                ("crosscaps", "0".into()),
                ("profiles", "[3]|[3]".into()),
            ],
            "1/3",
            oracle_value(3, &["[3]", "[3]"], 0, 0),
        ),
        fixture(
            "H2_33",
            &[
                ("degree", "6".into()),
                ("euler", "2".into()),
                ("profiles", "[3,3]|[3,3]".into()),
            ],
            "1/18",
            char_value(6, &["[3,3]", "[3,3]"], 2),
        ),
    ];

    // Sweep: H_2(D1, D2) = delta/zeta for every pair with d <= 5.
    let mut sweep_ok = true;
    let mut pairs = 0;
    for d in 1..=5 {
        for (a, b, v) in two_point_sphere_table(d).unwrap() {
            let expect = if a == b {
                Scalar::new(1.into(), zeta(&a))
            } else {
                Scalar::new(0.into(), 1.into())
            };
            sweep_ok &= v == expect;
            pairs += 1;
        }
    }
    out.push(fixture(
        "two_point_delta",
        &[("degrees", "1..=5".into()), ("pairs", pairs.to_string())],
        "all pairs equal delta/zeta",
        if sweep_ok {
            "all pairs equal delta/zeta".to_string()
        } else {
            "mismatch".to_string()
        },
    ));

    out.push(fixture(
        "riemann_hurwitz_sphere_over_sphere",
        &[
            ("euler_base", "2".into()),
            ("degree", "3".into()),
            ("profiles", "[3]|[3]".into()),
        ],
        2,
        riemann_hurwitz_euler(2, 3, &[p("[3]"), p("[3]")]).unwrap(),
    ));

    // Pairing convention at n = 2: <Z^dag_ij Z_kl> = delta_il delta_jk.
    let space = VarSpace::single(2);
    let mut pairings_ok = true;
    for i in 0..2u8 {
        for j in 0..2u8 {
            for k in 0..2u8 {
                for l in 0..2u8 {
                    let v = wick_pair(
                        &FockPoly::var(space, 0, i, j),
                        &FockPoly::var(space, 0, k, l),
                    )
                    .unwrap();
                    let expect = i64::from(i == l && j == k);
                    pairings_ok &= v == Scalar::new(expect.into(), 1.into());
                }
            }
        }
    }
    out.push(fixture(
        "pairing_convention_n2",
        &[
            ("size", "2".into()),
            ("slots", "all 16 index choices".into()),
        ],
        "delta_il*delta_jk",
        if pairings_ok {
            "delta_il*delta_jk".to_string()
        } else {
            "mismatch".to_string()
        },
    ));

    // Unbranched sphere covers: H_2((1^d)) = sum over partitions of
    // (dim/d!)^2, pinned against the oracle at small degree.
    for d in [2u32, 3] {
        let trivial = Partition::column(d).to_string();
        out.push(fixture(
            &format!("H2_unbranched_d{d}_both_paths"),
            &[("degree", d.to_string()), ("profiles", trivial)],
            char_value(d, &[&Partition::column(d).to_string()], 2),
            oracle_value(d, &[], 0, 0),
        ));
    }

    debug_assert!(
        out.iter()
            .map(|f| &f.name)
            .collect::<std::collections::BTreeSet<_>>()
            .len()
            == out.len()
    );
    out
}

#[derive(Serialize)]
pub struct FixtureSummary {
    pub written: usize,
    pub all_match: bool,
    pub directory: String,
}

pub fn emit(dir: &Path) -> Result<FixtureSummary, CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::usage(format!("cannot create {}: {e}", dir.display())))?;
    let fixtures = build_fixtures();
    let mut all_match = true;
    for f in &fixtures {
        all_match &= f.matches;
        let path = dir.join(format!("{}.json", f.name));
        let body = serde_json::to_string_pretty(f).expect("serializable");
        std::fs::write(&path, body + "\n")
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(FixtureSummary {
        written: fixtures.len(),
        all_match,
        directory: dir.display().to_string(),
    })
}
