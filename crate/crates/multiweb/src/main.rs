fn main() {
    // Die silently when stdout closes early (e.g. piped into `head`)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    std::process::exit(multiweb::cli::main());
}
