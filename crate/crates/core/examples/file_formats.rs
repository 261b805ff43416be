//! Writes a state and a Kraus set to JSON, reads them back and checks the
//! round trip is bit exact.

use imaginarity::channels::random_real_operation;
use imaginarity::io::{kraus_to_string, read_kraus, read_state, state_to_string, write_kraus, write_state};
use imaginarity::states::random_density;

fn main() -> imaginarity::Result<()> {
    let dir = std::env::temp_dir().join(format!("imaginarity-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir)?;

    let rho = random_density(2, 2, 5)?;
    let state_path = dir.join("state.json");
    write_state(&state_path, &rho)?;
    let back = read_state(&state_path)?;
    print!("{}", state_to_string(&back));
    println!("state round trip exact: {}", back.matrix() == rho.matrix());

    let op = random_real_operation(2, 2, 5)?;
    let kraus_path = dir.join("kraus.json");
    write_kraus(&kraus_path, &op)?;
    let op_back = read_kraus(&kraus_path)?;
    println!("kraus round trip exact: {}", kraus_to_string(&op_back) == kraus_to_string(&op));

    std::fs::remove_dir_all(&dir)?;
    Ok(())
}
