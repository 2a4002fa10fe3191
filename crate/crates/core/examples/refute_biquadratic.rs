use quartic_sos::corpus;
use quartic_sos::search::{check_sos_biquadratic, SearchConfig, SearchStatus};

fn main() -> quartic_sos::Result<()> {
    let cfg = SearchConfig::default();
    for (name, b) in [("b_thm22", corpus::b_thm22()), ("choi", corpus::choi_biquadratic())] {
        let out = check_sos_biquadratic(&b, &cfg)?;
        println!("{name}:\n{out}");
        if let SearchStatus::Refuted(c, _) = &out.status {
            println!("pairing = {}", c.pairing(&b)?);
        }
        println!();
    }
    Ok(())
}
