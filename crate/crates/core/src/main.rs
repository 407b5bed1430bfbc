fn main() {
    let (mut out, mut err) = (std::io::stdout().lock(), std::io::stderr().lock());
    std::process::exit(fo3pdl::cli::run(std::env::args_os(), &mut out, &mut err));
}
