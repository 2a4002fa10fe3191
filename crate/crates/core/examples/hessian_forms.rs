use quartic_sos::corpus;
use quartic_sos::form::{parse_expression, x_names};
use quartic_sos::Form;

fn main() -> quartic_sos::Result<()> {
    let p = parse_expression("x1^4 + x1^2*x2^2 - 3*x1*x2*x3^2 + x3^4", &x_names(3))?;
    let h = p.hessian()?;
    println!("p = {p}");
    for i in 0..3 {
        let row: Vec<String> = (0..3).map(|j| h.get(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
    // Euler's identity gives p back from its Hessian.
    assert_eq!(Form::euler_recover(&h, p.degree())?, p);

    // Choi's matrix is symmetric but fails the mixed-partial test.
    match corpus::choi_matrix().is_valid_hessian()?.witness() {
        Some(w) => println!("choi matrix is not a Hessian: {w}"),
        None => println!("choi matrix is a Hessian"),
    }
    Ok(())
}
