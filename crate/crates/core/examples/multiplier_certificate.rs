use quartic_sos::corpus;
use quartic_sos::form::Form;
use quartic_sos::rational::int;
use quartic_sos::search::{check_sos_with_multiplier, SearchConfig};

fn main() -> quartic_sos::Result<()> {
    let b = corpus::b_thm22().to_form();
    let m = &Form::var(3, 0).pow(2) + &Form::var(3, 1).pow(2);
    let out = check_sos_with_multiplier(&b, &m.scale(&int(384)), &SearchConfig::default())?;
    println!("{out}");
    if let Some(c) = out.certificate() {
        println!("{}", c.to_text());
    }
    Ok(())
}
