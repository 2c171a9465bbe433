//! Regenerates the `.catj` files under `crates/core/corpus`.

use std::fs;
use std::path::Path;

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus");
    for (rel, bytes) in conelab::corpus::files() {
        let path = root.join(rel);
        fs::create_dir_all(path.parent().expect("files live in subdirectories"))?;
        fs::write(&path, bytes)?;
    }
    Ok(())
}
