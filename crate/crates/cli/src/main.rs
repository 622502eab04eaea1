use std::path::PathBuf;

use clap::Parser;
use quatcount::ssenum::CacheEvent;

mod args;
mod commands;
mod ranges;
mod table;
mod verify;

use args::{Cli, Command};

pub struct Ctx {
    pub cache_dir: PathBuf,
    pub seed: u64,
    pub pool: rayon::ThreadPool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ok = 0,
    Failed = 1,
    Invalid = 2,
    Internal = 3,
}

impl Exit {
    pub fn from_error(e: &quatcount::Error) -> Exit {
        match e {
            quatcount::Error::InvalidInput(_) => Exit::Invalid,
            _ => Exit::Internal,
        }
    }
}

pub fn warn(msg: &str) {
    eprintln!("warning: {msg}");
}

pub fn report_cache_event(p: u64, event: &CacheEvent) {
    if let CacheEvent::Rebuilt(reason) = event {
        warn(&format!("p={p}: rebuilt cache ({reason})"));
    }
}

fn main() {
    let cli = Cli::parse();
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.jobs {
        pool = pool.num_threads(j);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            std::process::exit(Exit::Internal as i32);
        }
    };
    let ctx = Ctx {
        cache_dir: cli.cache_dir,
        seed: cli.seed,
        pool,
    };
    let exit = match &cli.command {
        Command::Table(a) => table::run(&ctx, a),
        Command::Verify(a) => verify::run(&ctx, a),
        Command::Enumerate(a) => commands::enumerate(&ctx, a),
        Command::Brandt(a) => commands::brandt(&ctx, a),
    };
    std::process::exit(exit as i32);
}
