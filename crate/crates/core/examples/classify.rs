//! The maximal clone above each maximal C-clone, with inclusion certificates.

use std::env;

use clausal_clones::classify::{classify, inclusion_certificate};
use clausal_clones::clausal::MaxCCloneParams;

fn main() -> clausal_clones::Result<()> {
    let n = env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for p in MaxCCloneParams::all(n) {
        let d = classify(p.a, p.b, n)?;
        let cert = inclusion_certificate(p.a, p.b, n)?;
        println!("{p} (a-b = {:+}): {} {:?}, certified {}", p.gap(), d.kind, d.relation, cert.equal);
    }
    Ok(())
}
