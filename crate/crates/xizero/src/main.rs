use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let env_bits = std::env::var(xizero::config::BITS_ENV).ok();
    let code = xizero::dispatch(std::env::args_os(), env_bits.as_deref(), &mut io::stdout().lock(), &mut io::stderr().lock());
    ExitCode::from(code as u8)
}
