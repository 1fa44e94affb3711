fn main() {
    std::process::exit(clumpstat::cli::dispatch(std::env::args_os()));
}
