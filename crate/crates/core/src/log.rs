//! Minimal stderr logging controlled by the PROJTRI_LOG environment variable
//! (off | info | debug). Defaults to off.

use std::sync::OnceLock;

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Off = 0,
    Info = 1,
    Debug = 2,
}

fn level() -> Level {
    static LEVEL: OnceLock<Level> = OnceLock::new();
    *LEVEL.get_or_init(|| match std::env::var("PROJTRI_LOG").as_deref() {
        Ok("info") => Level::Info,
        Ok("debug") => Level::Debug,
        _ => Level::Off,
    })
}

pub fn info(msg: impl AsRef<str>) {
    if level() >= Level::Info {
        eprintln!("[projtri] {}", msg.as_ref());
    }
}

pub fn debug(msg: impl AsRef<str>) {
    if level() >= Level::Debug {
        eprintln!("[projtri:debug] {}", msg.as_ref());
    }
}
