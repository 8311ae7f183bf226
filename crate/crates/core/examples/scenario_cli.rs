//! Drives the command-line front end in-process from a scenario config.

use cpt_entangle::cli::{run, ScenarioConfig};
use cpt_entangle::entanglement::Theory;

fn main() {
    let mut cfg = ScenarioConfig::default();
    cfg.system2.theta = -0.4;
    cfg.options.theory = Theory::Cpt;
    cfg.times.steps = 6;

    let path = std::env::temp_dir().join("cpt-entangle-example-scenario.json");
    std::fs::write(&path, cfg.to_json()).expect("temp dir is writable");
    let path = path.to_string_lossy().into_owned();

    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    for command in ["entropy", "rate", "hmax"] {
        println!("$ cpt-entangle {command} --config {path}");
        let code = run(
            ["cpt-entangle", command, "--config", &path],
            &mut stdout.lock(),
            &mut stderr.lock(),
        );
        println!("(exit {code})\n");
    }
}
