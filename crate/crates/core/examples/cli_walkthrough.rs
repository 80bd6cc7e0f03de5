//! Drive every subcommand through the library entry point on a generated
//! corpus written to a temporary directory.

use clap::Parser;
use scopegate::cli::{run, Cli};
use scopegate::synth::{scholarly_corpus, write_corpus};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let (manifest, text_dir) = write_corpus(&scholarly_corpus(120, 0.3, 1), dir.path().join("corpus"))?;
    let out = dir.path().join("out");
    let config = dir.path().join("run.ini");
    std::fs::write(
        &config,
        format!(
            "[corpus]\nmanifest = {}\ntext_dir = {}\n\n[features]\naxis = fs-str:10\n\n[models]\nmodel = dt\n\n\
             [sweep]\naxis = top-structural\ntop_structural = 5,10\n\n[output]\ndir = {}\n",
            manifest.display(),
            text_dir.display(),
            out.display()
        ),
    )?;
    let config = config.display().to_string();
    let model = out.join("model.json").display().to_string();

    let commands: Vec<Vec<&str>> = vec![
        vec!["ingest"],
        vec!["split"],
        vec!["rank"],
        vec!["train"],
        vec!["evaluate"],
        vec!["predict", "--model", &model],
        vec!["sweep"],
    ];
    for args in &commands {
        println!("$ scopegate {} --config run.ini", args.join(" "));
        let argv = ["scopegate"].into_iter().chain(args.iter().copied()).chain(["--config", &config]);
        run(&Cli::try_parse_from(argv)?)?;
    }
    let mut written: Vec<String> = std::fs::read_dir(&out)?
        .map(|e| e.map(|e| e.file_name().to_string_lossy().into_owned()))
        .collect::<Result<_, _>>()?;
    written.sort();
    println!("outputs: {written:?}");
    Ok(written)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example().map(|_| ())
}
