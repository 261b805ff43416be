//! Scans every measure over the default parameter grid for one state and
//! prints a CSV, like `imaginarity scan`.

use imaginarity::io::format_sig;
use imaginarity::measures::{measure_report, MeasureId, MeasureParams, ParameterGrid};
use imaginarity::properties::example_rho0;

fn opt(x: Option<f64>) -> String {
    x.map(format_sig).unwrap_or_default()
}

fn main() -> imaginarity::Result<()> {
    let rho = example_rho0();
    let points = ParameterGrid::default().points(&MeasureId::ALL);
    let report = measure_report("rho0", &rho, &points)?;
    println!("measure,alpha,z,q,lambda,value");
    for e in &report.entries {
        let p: MeasureParams = e.params;
        let value = match e.value.value() {
            Some(v) => format_sig(v),
            None => "undefined".into(),
        };
        println!(
            "{},{},{},{},{},{}",
            e.measure,
            opt(p.alpha()),
            opt(p.z()),
            opt(p.q()),
            opt(p.lambda()),
            value
        );
    }
    Ok(())
}
