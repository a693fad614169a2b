//! Clausal relations, maximal C-clone parameters and domination.

use clausal_clones::clausal::{binary_clausal, build_clausal, dominating_params, ClausalSpec, MaxCCloneParams};
use clausal_clones::format::format_relation;

fn main() -> clausal_clones::Result<()> {
    let spec: ClausalSpec = "4 2 1 | 2 3 | 1".parse()?;
    let rel = build_clausal(&spec);
    println!("{spec}: {} of {} triples", rel.len(), rel.capacity());

    print!("R^{{2,0}} on 3 elements:\n{}", format_relation(&binary_clausal(2, 0, 3)?));

    for n in 2..=5 {
        let params = MaxCCloneParams::all(n);
        let shown: Vec<String> = params.iter().map(|p| format!("({},{})", p.a, p.b)).collect();
        println!("n = {n}: {} maximal C-clones {}", params.len(), shown.join(" "));
    }

    let specs = [spec, "4 1 2 | 3 | 0 2".parse()?];
    for p in dominating_params(&specs) {
        println!("contained in Pol({p})");
    }
    Ok(())
}
