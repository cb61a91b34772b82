fn main() {
    // Test binaries link libpython; only wheel builds drop it.
    if std::env::var_os("CARGO_FEATURE_EXTENSION_MODULE").is_some() {
        pyo3_build_config::add_extension_module_link_args();
    }
}
