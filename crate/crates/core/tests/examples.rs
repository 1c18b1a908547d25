mod partition_table_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/partition_table.rs"));
}

#[test]
fn partition_table_example_runs() {
    partition_table_example::run_example().expect("partition_table example should run");
}

mod lie_algebra_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/lie_algebra.rs"));
}

#[test]
fn lie_algebra_example_runs() {
    lie_algebra_example::run_example().expect("lie_algebra example should run");
}

mod spinors_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spinors.rs"));
}

#[test]
fn spinors_example_runs() {
    spinors_example::run_example().expect("spinors example should run");
}

mod invariant_fields_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/invariant_fields.rs"));
}

#[test]
fn invariant_fields_example_runs() {
    invariant_fields_example::run_example().expect("invariant_fields example should run");
}

mod descend_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/descend.rs"));
}

#[test]
fn descend_example_runs() {
    descend_example::run_example().expect("descend example should run");
}

mod duality_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/duality.rs"));
}

#[test]
fn duality_example_runs() {
    duality_example::run_example().expect("duality example should run");
}

mod syzygies_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/syzygies.rs"));
}

#[test]
fn syzygies_example_runs() {
    syzygies_example::run_example().expect("syzygies example should run");
}

mod exactness_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/exactness.rs"));
}

#[test]
fn exactness_example_runs() {
    exactness_example::run_example().expect("exactness example should run");
}

mod monogenic_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/monogenic.rs"));
}

#[test]
fn monogenic_example_runs() {
    monogenic_example::run_example().expect("monogenic example should run");
}

mod cli_report_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cli_report.rs"));
}

#[test]
fn cli_report_example_runs() {
    cli_report_example::run_example().expect("cli_report example should run");
}
