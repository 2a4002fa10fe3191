use quartic_sos::corpus;
use quartic_sos::form::{parse_expression, x_names};
use quartic_sos::search::{check_sos_convexity, SearchConfig};

fn main() -> quartic_sos::Result<()> {
    let cfg = SearchConfig::default();
    let sum = parse_expression("x1^4 + x2^4 + x3^4", &x_names(3))?;
    for (name, p) in [("x1^4+x2^4+x3^4", sum), ("f", corpus::f_lemma32())] {
        let out = check_sos_convexity(&p, &cfg)?;
        println!("{name}:\n{out}\n");
        if let Some(c) = out.certificate() {
            print!("{}", c.to_text());
        }
    }
    Ok(())
}
