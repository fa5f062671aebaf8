//! The closed-form density of a beta difference through the Appell F1
//! series, checked against convolution quadrature. Large posterior shapes
//! push the series arguments towards 1 where it stops converging.

use pedsafe::posteriors::{diff_cdf, diff_pdf, BetaDifference, BetaParams, EvalMethod};
use pedsafe::specfun::{appell_f1, gauss_2f1, SeriesControl};

fn main() -> pedsafe::Result<()> {
    let ctl = SeriesControl::default();
    // F1(u; v1, v2; w; x, x) = 2F1(u, v1 + v2; w; x)
    let f1 = appell_f1(1.5, 0.5, 0.7, 2.5, 0.4, 0.4, &ctl)?;
    let f21 = gauss_2f1(1.5, 1.2, 2.5, 0.4)?;
    println!("F1 on the diagonal {f1:.15}  vs 2F1 {f21:.15}\n");

    let cases = [
        (BetaParams::new(2.0, 3.0)?, BetaParams::new(1.5, 4.0)?),
        (BetaParams::new(4.0, 20.0)?, BetaParams::new(1.0, 20.0)?),
        (BetaParams::new(5.0, 97.0)?, BetaParams::new(2.0, 100.0)?),
    ];
    for (t, c) in cases {
        let d = BetaDifference::new(t, c);
        println!("treat {t}  control {c}");
        for &x in &[-0.1, 0.05, 0.2] {
            let conv = diff_pdf(&d, x, EvalMethod::default())?;
            match diff_pdf(&d, x, EvalMethod::ClosedForm) {
                Ok(cf) => println!("  pdf({x:>5}) closed-form {cf:.10}  convolution {conv:.10}"),
                Err(e) => println!("  pdf({x:>5}) closed-form failed: {e}; convolution {conv:.10}"),
            }
        }
        match diff_cdf(&d, 0.05, EvalMethod::ClosedForm) {
            Ok(cf) => println!(
                "  cdf(0.05) closed-form {cf:.10}  convolution {:.10}",
                diff_cdf(&d, 0.05, EvalMethod::default())?
            ),
            Err(e) => println!("  cdf(0.05) closed-form failed: {e}"),
        }
    }
    Ok(())
}
