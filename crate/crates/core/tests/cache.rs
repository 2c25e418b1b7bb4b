//! Runs in its own process because it sets the cache directory.

use rgc_core::cache::{basis, cached_image_matrix, image_rank, CACHE_ENV};
use rgc_core::complex::{image_matrix, Splitting};
use rgc_core::enumerate::{enumerate, Selector};

#[test]
fn warm_cache_reproduces_cold_results() {
    let dir = tempfile_dir();
    std::env::set_var(CACHE_ENV, &dir);
    let sel = Selector::sector(1, 1, 4);
    let cold = basis(sel, 0).unwrap();
    let warm = basis(sel, 0).unwrap();
    assert_eq!(cold.classes(), warm.classes());
    assert_eq!(cold.classes(), enumerate(sel, 0).unwrap().classes());

    let r = image_rank(&cold, Splitting::Proper).unwrap();
    assert_eq!(image_rank(&warm, Splitting::Proper).unwrap(), r);
    assert_eq!(cached_image_matrix(&cold, Splitting::Proper).unwrap(), image_matrix(&cold, Splitting::Proper));

    // A corrupted entry is recomputed rather than trusted.
    for entry in std::fs::read_dir(&dir).unwrap() {
        std::fs::write(entry.unwrap().path(), "{not json").unwrap();
    }
    assert_eq!(basis(sel, 0).unwrap().classes(), cold.classes());
    assert_eq!(image_rank(&cold, Splitting::Proper).unwrap(), r);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn tempfile_dir() -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("rgc-cache-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}
