fn main() {
    #[cfg(feature = "generate-header")]
    {
        let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
        cbindgen::generate(&crate_dir)
            .expect("cbindgen config in cbindgen.toml is valid")
            .write_to_file(format!("{crate_dir}/include/broadrep.h"));
    }
}
