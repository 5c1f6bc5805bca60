//! The rate phase transition: fitted log-log slopes of the completion error
//! against sample size, for three scaled Student t noise laws. As the moment
//! index falls from 2 toward 1, the robust rate exponent -(alpha-1)/alpha
//! climbs from -1/2 toward 0; the unclipped baseline degrades faster.
//!
//! ```bash
//! cargo run --release --example phase_transition
//! ```

use heavytail::simlab::{fit_loglog_slope, group_means, run_mc_experiment, EstimatorTag, McPlan};

fn main() {
    let plan = McPlan::desk_scale(42);
    println!(
        "running: d = {}x{}, n in {:?}, {} replicates, noises t2/5, t1.5/10, t1.1/15",
        plan.d1, plan.d2, plan.n_grid, plan.replicates
    );
    let started = std::time::Instant::now();
    let out = run_mc_experiment(&plan).unwrap();
    println!(
        "done in {:.1} s ({} records, R = {:.3})\n",
        started.elapsed().as_secs_f64(),
        out.records.len(),
        out.max_norm_budget
    );

    println!("{:>9} {:>9} {:>18} {:>18}", "noise", "alpha", "robust slope (R2)", "standard slope (R2)");
    let theory = [-0.497, -0.329, -0.083];
    for (noise, th) in plan.noises.iter().zip(theory) {
        let rob = fit_loglog_slope(&out.records, EstimatorTag::Robust, &noise.label).unwrap();
        let std_ = fit_loglog_slope(&out.records, EstimatorTag::Standard, &noise.label).unwrap();
        println!(
            "{:>9} {:>9.2} {:>10.4} ({:.3}) {:>10.4} ({:.3})   theory {th:+.3}",
            noise.label,
            noise.alpha(),
            rob.slope,
            rob.r_squared,
            std_.slope,
            std_.r_squared,
        );
    }

    println!("\nmean Frobenius error by n (heaviest tail, t1.1/15):");
    for m in group_means(&out.records)
        .iter()
        .filter(|m| m.noise == "t1.1/15")
    {
        println!(
            "  {:>9} n = {:>6}: {:.4}",
            m.estimator.to_string(),
            m.n,
            m.mean_error
        );
    }
}
