//! Compiles a C program against the generated header and the shared
//! library, then runs it.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "conelab.h"

static unsigned char buf[1 << 20];

static size_t slurp(const char *path) {
    FILE *f = fopen(path, "rb");
    if (!f) return 0;
    size_t n = fread(buf, 1, sizeof buf, f);
    fclose(f);
    return n;
}

int main(int argc, char **argv) {
    (void)argc;
    char path[4096];
    snprintf(path, sizeof path, "%s/double_categories/htilde_of_walking_iso.catj", argv[1]);
    size_t n = slurp(path);
    if (n == 0) return 10;
    ConelabLibrary *lib = NULL;
    if (conelab_library_load(buf, n, false, &lib) != CONELAB_STATUS_OK) return 11;
    bool whi = false;
    if (conelab_is_whi(lib, NULL, &whi) != CONELAB_STATUS_OK || !whi) return 12;
    ConelabCounts c;
    if (conelab_double_category_counts(lib, "Htilde(walking_iso)", &c) != CONELAB_STATUS_OK) return 13;
    if (c.objects != 2 || c.squares != 16) return 14;
    if (conelab_is_whi(lib, "missing", &whi) != CONELAB_STATUS_NOT_FOUND) return 15;
    if (strlen(conelab_last_error()) == 0) return 16;
    conelab_library_free(lib);

    snprintf(path, sizeof path, "%s/broken/syntax_error.catj", argv[1]);
    n = slurp(path);
    if (conelab_library_load(buf, n, false, &lib) != CONELAB_STATUS_SYNTAX) return 17;
    printf("ok %s\n", conelab_version());
    return 0;
}
"#;

#[test]
fn c_program_links_and_runs() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    // target/<profile>/deps/<test binary>
    let target = std::env::current_exe().unwrap().parent().unwrap().parent().unwrap().to_path_buf();
    let shared = target.join("libconelab_ffi.so");
    assert!(shared.exists(), "missing {}", shared.display());
    let work = target.join("ffi_c_test");
    std::fs::create_dir_all(&work).unwrap();
    let src = work.join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let exe = work.join("main");
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-o"])
        .arg(&exe)
        .arg(&src)
        .arg("-I")
        .arg(manifest.join("include"))
        .arg("-L")
        .arg(&target)
        .arg(format!("-Wl,-rpath,{}", target.display()))
        .arg("-lconelab_ffi")
        .status()
        .expect("C compiler runs");
    assert!(status.success());
    let out = Command::new(&exe).arg(manifest.join("../core/corpus")).output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(String::from_utf8_lossy(&out.stdout), format!("ok {}\n", env!("CARGO_PKG_VERSION")));
}
