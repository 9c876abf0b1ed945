//! Writes the example manifests to `crates/cli/fixtures` (or the directory
//! given as the first argument).

use std::path::PathBuf;

fn main() -> std::io::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    std::fs::create_dir_all(&dir)?;
    for f in morita_lab::fixtures::all_fixtures() {
        std::fs::write(dir.join(&f.name), &f.contents)?;
    }
    println!("wrote {}", dir.display());
    Ok(())
}
