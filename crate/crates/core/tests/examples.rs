mod command_line {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/command_line.rs"));
}

mod correlation_table {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/correlation_table.rs"));
}

mod cylinder_oracle {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cylinder_oracle.rs"));
}

mod elliptic_functions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/elliptic_functions.rs"));
}

mod fibonacci_signs {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/fibonacci_signs.rs"));
}

mod frustrated_lattice {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/frustrated_lattice.rs"));
}

mod gauge_susceptibility {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/gauge_susceptibility.rs"));
}

mod rapidity_couplings {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/rapidity_couplings.rs"));
}

mod susceptibility_grid {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/susceptibility_grid.rs"));
}

mod verification_report {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/verification_report.rs"));
}

#[test]
fn command_line_runs() {
    command_line::run_example().expect("command_line example should run");
}

#[test]
fn correlation_table_runs() {
    correlation_table::run_example().expect("correlation_table example should run");
}

#[test]
fn cylinder_oracle_runs() {
    cylinder_oracle::run_example().expect("cylinder_oracle example should run");
}

#[test]
fn elliptic_functions_runs() {
    elliptic_functions::run_example().expect("elliptic_functions example should run");
}

#[test]
fn fibonacci_signs_runs() {
    fibonacci_signs::run_example().expect("fibonacci_signs example should run");
}

#[test]
fn frustrated_lattice_runs() {
    frustrated_lattice::run_example().expect("frustrated_lattice example should run");
}

#[test]
fn gauge_susceptibility_runs() {
    gauge_susceptibility::run_example().expect("gauge_susceptibility example should run");
}

#[test]
fn rapidity_couplings_runs() {
    rapidity_couplings::run_example().expect("rapidity_couplings example should run");
}

#[test]
fn susceptibility_grid_runs() {
    susceptibility_grid::run_example().expect("susceptibility_grid example should run");
}

#[test]
fn verification_report_runs() {
    verification_report::run_example().expect("verification_report example should run");
}
