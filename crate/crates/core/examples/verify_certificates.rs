use quartic_sos::certificates::{verify_sos_certificate, SosVerdict};
use quartic_sos::corpus;
use quartic_sos::rational::int;

fn main() -> quartic_sos::Result<()> {
    let b = corpus::b_thm22();
    let cert = corpus::q22_cert();
    let target = b.to_form();
    match verify_sos_certificate(&target, &cert)? {
        SosVerdict::Accepted { ldlt } => {
            println!("(x1^2 + x2^2) * b certified, Gram matrix {:?}", ldlt.verdict);
            println!("smallest pivot: {}", ldlt.pivots.iter().min().expect("nonempty"));
        }
        other => println!("rejected: {other:?}"),
    }

    let dual = corpus::b22_dual();
    let v = dual.verify_refutation(&b)?;
    println!("dual pairing with b: {}, accepted: {}", v.pairing(), v.is_accepted());

    // The same Gram matrix does not certify twice the target.
    let doubled = b.scale(&int(2)).to_form();
    println!("against 2b: {:?}", verify_sos_certificate(&doubled, &cert)?.is_accepted());
    Ok(())
}
