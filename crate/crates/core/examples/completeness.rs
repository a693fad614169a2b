//! Completeness of clausal sets, and the obstruction relations an operation
//! set has to break.

use clausal_clones::algebra::Operation;
use clausal_clones::clausal::{corollary_hypotheses, dominating_params, is_complete, ClausalSpec};

fn main() -> clausal_clones::Result<()> {
    let n = 3;
    let sets: [&[&str]; 3] = [
        &["3 1 1 | 1 | 0"],
        &["3 1 1 | 1 | 0", "3 1 1 | 2 | 1"],
        &["3 1 1 | 0 | 1", "3 2 1 | 2 0 | 2"],
    ];
    for set in sets {
        let specs = set.iter().map(|s| s.parse()).collect::<clausal_clones::Result<Vec<ClausalSpec>>>()?;
        let above: Vec<String> = dominating_params(&specs).iter().map(ToString::to_string).collect();
        println!("{set:?}: complete = {}, inside {above:?}", is_complete(&specs));
    }

    let ops = [
        Operation::unary(n, vec![1, 2, 0])?,
        Operation::from_fn(n, 2, |t| (t[0] + t[1]) % n)?,
    ];
    for check in corollary_hypotheses(&ops, n)? {
        println!("{:?}: broken by {:?}", check.obstruction.kind, check.violated_by);
    }
    Ok(())
}
