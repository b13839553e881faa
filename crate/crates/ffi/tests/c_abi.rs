//! Compiles `examples/c/smoke.c` against the generated header and the static
//! library, then runs it. Skipped when no C compiler is on PATH.

use std::path::{Path, PathBuf};
use std::process::Command;

fn target_dir() -> PathBuf {
    // target/<profile>/deps/<test binary>
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    if Command::new(&cc).arg("--version").output().is_err() {
        eprintln!("skipping: no C compiler ({cc})");
        return;
    }
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = target_dir().join("libtaxosim_ffi.a");
    assert!(lib.exists(), "missing {}", lib.display());

    let work = tempfile::tempdir().unwrap();
    let exe = work.path().join("smoke");
    let status = Command::new(&cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(manifest.join("include"))
        .arg(manifest.join("examples/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm"])
        .arg("-o")
        .arg(&exe)
        .status()
        .unwrap();
    assert!(status.success(), "C compilation failed");

    let edges = work.path().join("toy.tsv");
    std::fs::write(
        &edges,
        "dog\tcanine\nwolf\tcanine\ncanine\tanimal\ncat\tanimal\n",
    )
    .unwrap();
    let out = Command::new(&exe)
        .arg(&edges)
        .args(["dog", "wolf"])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );

    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains(&format!("version {}\n", env!("CARGO_PKG_VERSION"))));
    assert!(stdout.contains("nodes 5\n"));
    assert!(stdout.contains("max_depth 2\n"));
    assert!(stdout.contains("unknown 0\n"));
    assert!(stdout.contains("null_status 1\n"));
    // dog/wolf: lcs canine (depth 1), path 2, compensation 0.3 * 2 / (5/3).
    let score: f64 = stdout
        .lines()
        .find_map(|l| l.strip_prefix("score "))
        .unwrap()
        .parse()
        .unwrap();
    let p = 2.0 + 0.3 * 2.0 / (5.0 / 3.0);
    assert!((score - 2.0 / (2.0 + p)).abs() < 1e-6, "{score}");
}
