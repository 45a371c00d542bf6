fn main() {
    if let Some(threads) = std::env::var("OTCELL_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global()
            .expect("rayon pool is configured once");
    }
    std::process::exit(otcell::cli::main_with_args(std::env::args_os()));
}
