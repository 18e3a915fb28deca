//! Golden cases shared by the golden and acceptance tests.
#![allow(dead_code)]

pub mod oracle;

use std::path::{Path, PathBuf};

use mcdef_cli::{run, Command, Flags};

pub struct Case {
    pub name: &'static str,
    pub command: &'static str,
    pub fixtures: &'static [&'static str],
    pub center: i64,
    /// 0 pass, 1 check failure, 2 usage or parse error.
    pub exit: i32,
}

const fn case(name: &'static str, command: &'static str, fixtures: &'static [&'static str], exit: i32) -> Case {
    Case { name, command, fixtures, center: 0, exit }
}

pub const CASES: &[Case] = &[
    case("check_abelian", "check", &["abelian.fix"], 0),
    case("check_sl2", "check", &["sl2.fix"], 0),
    case("check_sl2_corrupted", "check", &["sl2_corrupted.fix"], 1),
    case("check_non_formal_linf", "check", &["non_formal_linf.fix"], 0),
    case("check_sl2_augmented", "check", &["sl2_augmented.fix"], 0),
    case("check_item4", "check", &["item4.fix"], 0),
    case("check_jordan2", "check", &["jordan2.fix"], 0),
    case("check_full_flag", "check", &["full_flag.fix"], 0),
    case("check_profile_item2", "check", &["profile_item2.fix"], 0),
    case("check_malformed_nesting", "check", &["malformed_nesting.fix"], 2),
    case("cohomology_abelian", "cohomology", &["abelian.fix"], 0),
    case("cohomology_acyclic", "cohomology", &["acyclic.fix"], 0),
    case("cohomology_non_formal", "cohomology", &["non_formal.fix"], 0),
    case("cohomology_sl2_augmented", "cohomology", &["sl2_augmented.fix"], 0),
    case("cohomology_item4", "cohomology", &["item4.fix"], 0),
    case("transfer_abelian", "transfer", &["abelian.fix"], 0),
    case("transfer_acyclic", "transfer", &["acyclic.fix"], 0),
    case("transfer_sl2", "transfer", &["sl2.fix"], 0),
    case("transfer_non_formal", "transfer", &["non_formal.fix"], 0),
    case("transfer_non_formal_linf", "transfer", &["non_formal_linf.fix"], 0),
    case("transfer_item1", "transfer", &["item1.fix"], 0),
    case("transfer_item2", "transfer", &["item2.fix"], 0),
    case("cone_sl2_augmented", "cone", &["sl2_augmented.fix"], 0),
    case("cone_item4", "cone", &["item4.fix"], 0),
    case("present_item1", "present", &["item1.fix"], 0),
    case("present_item2", "present", &["item2.fix"], 0),
    case("present_item3", "present", &["item3.fix"], 0),
    case("present_item4", "present", &["item4.fix"], 0),
    case("present_item5", "present", &["item5.fix"], 0),
    case("present_item6", "present", &["item6.fix"], 0),
    case("present_non_formal", "present", &["non_formal.fix"], 0),
    case("monodromy_zero3", "monodromy", &["zero3.fix"], 0),
    Case { name: "monodromy_zero3_center2", command: "monodromy", fixtures: &["zero3.fix"], center: 2, exit: 0 },
    case("monodromy_jordan2", "monodromy", &["jordan2.fix"], 0),
    case("monodromy_jordan21", "monodromy", &["jordan21.fix"], 0),
    case("monodromy_jordan3", "monodromy", &["jordan3.fix"], 0),
    case("relmonodromy_not_exists", "relmonodromy", &["relative_not_exists.fix"], 0),
    case("relmonodromy_pure_jordan2", "relmonodromy", &["pure_jordan2.fix"], 0),
    case("relmonodromy_two_step_zero", "relmonodromy", &["two_step_zero.fix"], 0),
    case("relmonodromy_mixed", "relmonodromy", &["mixed_exists.fix"], 0),
    case("zfilt_pure_jordan2", "zfilt", &["pure_jordan2.fix"], 0),
    case("zfilt_two_step_zero", "zfilt", &["two_step_zero.fix"], 0),
    case("zfilt_mixed", "zfilt", &["mixed_exists.fix"], 0),
    case("zfilt_not_exists", "zfilt", &["relative_not_exists.fix"], 1),
    case("tensor_zero", "tensor", &["zero3.fix", "zero3.fix"], 0),
    case("tensor_jordan2", "tensor", &["jordan2.fix", "jordan2.fix"], 0),
    case("tensor_jordan21_jordan2", "tensor", &["jordan21.fix", "jordan2.fix"], 0),
    case("tensor_pure_jordan2", "tensor", &["pure_jordan2.fix", "pure_jordan2.fix"], 1),
    case("consequences", "consequences", &[], 0),
    case("consequences_profile_item1", "consequences", &["profile_item1.fix"], 0),
    case("consequences_profile_item2", "consequences", &["profile_item2.fix"], 0),
    case("consequences_profile_unobstructed", "consequences", &["profile_unobstructed.fix"], 0),
    case("cohomology_cone_dims", "cohomology", &["cone_dims.fix"], 0),
    case("cone_cone_dims", "cone", &["cone_dims.fix"], 0),
    case("monodromy_wrong_kind", "monodromy", &["sl2.fix"], 2),
];

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_dir().join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Machine report (or error text) and exit code, as the binary would produce.
pub fn render(c: &Case) -> (String, i32) {
    let command: Command = c.command.parse().expect("known command");
    let flags = Flags { center: c.center, ..Flags::default() };
    let inputs: Vec<(String, String)> = c.fixtures.iter().map(|f| (f.to_string(), read_fixture(f))).collect();
    match run(command, &flags, &inputs) {
        Ok(r) => (r.machine(), r.exit_code()),
        Err(e) => (format!("error: {e}\n"), 2),
    }
}
