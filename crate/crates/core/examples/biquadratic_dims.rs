use quartic_sos::biquadratic::dims::{dim_hessian, dim_nary, dim_symmetric};
use quartic_sos::{corpus, hessian_biquadratic};

fn main() -> quartic_sos::Result<()> {
    println!("{:>3} {:>8} {:>10} {:>8}", "n", "n-ary", "symmetric", "hessian");
    for n in 1..=6 {
        println!("{n:>3} {:>8} {:>10} {:>8}", dim_nary(n)?, dim_symmetric(n)?, dim_hessian(n)?);
    }

    let b = hessian_biquadratic(&corpus::f_lemma32())?;
    println!("\nHessian form of f:\n{}", b.display());
    println!("symmetric: {:?}", b.is_symmetric());
    Ok(())
}
