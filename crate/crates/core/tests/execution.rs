//! The execution mode is process-wide, so this file holds a single test.

use gmlab::gallery;
use gmlab::gm::{default_grid, gm_fit_constant, GmCertificate};
use gmlab::par::{set_execution, Execution};
use gmlab::transforms::{cossup_bounds, default_n_grid, default_u_grid};
use gmlab::BesselOrder;

#[test]
fn sequential_and_parallel_sweeps_agree_bitwise() {
    let p = gallery::get("alternating_dyadic").unwrap().profile().unwrap().clone();
    let order = BesselOrder::new(-0.5).unwrap();
    let run = || {
        let cert = GmCertificate::fitted(&p, 1, &default_grid(&p)).unwrap();
        let c = gm_fit_constant(&p, 1, &default_grid(&p)).unwrap();
        let u: Vec<f64> = default_u_grid().into_iter().step_by(8).collect();
        let bounds = cossup_bounds(&p, order, &cert, &default_n_grid(), &u, 1e-9).unwrap();
        (c, bounds)
    };
    set_execution(Execution::Sequential);
    let seq = run();
    set_execution(Execution::Parallel);
    let par = run();
    assert_eq!(seq.0.to_bits(), par.0.to_bits());
    assert_eq!(seq.1, par.1);
}
