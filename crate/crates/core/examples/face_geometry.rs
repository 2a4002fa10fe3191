use quartic_sos::face::{
    alpha5_lower_bound, face_report, find_additional_zero, AlphaVector, FaceParams, Precision,
};
use quartic_sos::rational::{int, rat};

fn main() -> quartic_sos::Result<()> {
    let fp = FaceParams::new(int(1), rat(1, 2));
    let alpha = AlphaVector::new([int(1), int(2), int(1), int(3), int(0)]);
    let bound = alpha5_lower_bound(&alpha, &fp)?;
    println!("alpha5 bound: {bound}");

    let inside = alpha.with_alpha5(&bound / int(2));
    let report = face_report(&inside, &fp, None)?;
    println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));

    let edge = alpha.with_alpha5(bound);
    let z = find_additional_zero(&edge, &fp, 1e-9, Precision::Double)?;
    println!("additional zero x = {:?}", z.point.x);
    println!("                y = {:?}", z.point.y);
    println!("residual {:e}, kind {:?}", z.point.residual, z.kind);
    Ok(())
}
