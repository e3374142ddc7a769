use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use submeasure_core::banach::phi_of_sequence;
use submeasure_core::colorings::{gen_named_coloring, NamedColoring};
use submeasure_core::io::{write_coloring, write_covering, write_matrix, write_submeasure};
use submeasure_core::pathology::CoveringInstance;
use submeasure_core::zoo::{gen_edfin, gen_finxempty, gen_mazur, gen_property_a, gen_solecki, Variant};
use submeasure_core::{Limits, Submeasure};

use crate::output::{pretty, CliError, CliResult};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Generator {
    Mazur,
    Solecki,
    Edfin,
    #[value(name = "propertyA", alias = "property-a")]
    PropertyA,
    Finxempty,
    Coloring,
}

#[derive(Args)]
pub struct GenArgs {
    generator: Generator,
    /// Level, or number of points for `coloring`.
    #[arg(long)]
    n: Option<usize>,
    /// Property-A variant: a or b.
    #[arg(long, default_value = "a")]
    variant: String,
    /// Property-A truncation "n_max,k_max".
    #[arg(long)]
    stages: Option<String>,
    /// Block sizes "2,3,4" for `finxempty` and the partition coloring.
    #[arg(long)]
    blocks: Option<String>,
    /// Coloring name: sierpinski or partition.
    #[arg(long)]
    name: Option<String>,
    /// Output directory (created if missing).
    #[arg(long, default_value = ".")]
    out: PathBuf,
}

fn list(spec: &str, flag: &str) -> CliResult<Vec<usize>> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse()
                .map_err(|_| CliError::Input(format!("--{flag}: {p:?} is not a nonnegative integer")))
        })
        .collect()
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::Input(format!("--{flag} is required for this generator")))
}

struct Output {
    parameters: Map<String, Value>,
    files: Vec<(String, String, Value)>,
}

impl Output {
    fn submeasure(&mut self, name: String, phi: &Submeasure) -> CliResult<()> {
        let text = write_submeasure(phi, &Limits::default())?;
        let summary = json!({ "kind": "submeasure", "repr": phi.repr().kind(), "ground": phi.size() });
        self.files.push((name, text, summary));
        Ok(())
    }

    fn covering(&mut self, name: String, inst: &CoveringInstance) {
        let summary = json!({ "kind": "covering", "ground": inst.ground.size(), "family_size": inst.family.len() });
        self.files.push((name, write_covering(inst), summary));
    }
}

pub fn run(args: &GenArgs) -> CliResult<String> {
    let mut out = Output {
        parameters: Map::new(),
        files: Vec::new(),
    };
    let generator = match args.generator {
        Generator::Mazur => {
            let n = need(args.n, "n")?;
            let m = gen_mazur(n)?;
            out.parameters.insert("n".into(), json!(n));
            out.submeasure(format!("mazur{n}.json"), &m.psi)?;
            out.covering(format!("mazur{n}_covering.json"), &m.inst);
            "mazur"
        }
        Generator::Solecki => {
            let n = need(args.n, "n")?;
            let s = gen_solecki(n)?;
            out.parameters.insert("n".into(), json!(n));
            out.submeasure(format!("solecki{n}.json"), &s.chi)?;
            out.covering(format!("solecki{n}_covering.json"), &s.inst);
            "solecki"
        }
        Generator::Edfin => {
            let n = need(args.n, "n")?;
            let e = gen_edfin(n)?;
            out.parameters.insert("n".into(), json!(n));
            out.submeasure(format!("edfin{n}.json"), &e.psi)?;
            out.covering(format!("edfin{n}_covering.json"), &e.chains);
            "edfin"
        }
        Generator::PropertyA => {
            let variant: Variant = args.variant.parse()?;
            let stages = list(args.stages.as_deref().unwrap_or("3,3"), "stages")?;
            let [n_max, k_max] = stages[..] else {
                return Err(CliError::Input("--stages takes two numbers \"n_max,k_max\"".into()));
            };
            let pa = gen_property_a(variant, n_max, k_max)?;
            let tag = if variant == Variant::A { "a" } else { "b" };
            out.parameters.insert("variant".into(), json!(tag));
            out.parameters.insert("n_max".into(), json!(n_max));
            out.parameters.insert("k_max".into(), json!(k_max));
            out.submeasure(format!("propertyA_{tag}_{n_max}_{k_max}.json"), &pa.phi)?;
            "propertyA"
        }
        Generator::Finxempty => {
            let blocks = list(args.blocks.as_deref().unwrap_or("2,3,4"), "blocks")?;
            let f = gen_finxempty(&blocks)?;
            out.parameters.insert("blocks".into(), json!(blocks));
            let summary = json!({ "kind": "matrix", "rows": f.x.rows(), "cols": f.x.cols() });
            out.files.push(("finxempty_matrix.json".into(), write_matrix(&f.x), summary));
            out.submeasure("finxempty.json".into(), &phi_of_sequence(&f.x)?)?;
            "finxempty"
        }
        Generator::Coloring => {
            let name = args.name.as_deref().unwrap_or("sierpinski");
            let named = match name {
                "sierpinski" => NamedColoring::Sierpinski(need(args.n, "n")?),
                "partition" => NamedColoring::Partition(list(
                    args.blocks.as_deref().ok_or_else(|| CliError::Input("--blocks is required for the partition coloring".into()))?,
                    "blocks",
                )?),
                other => return Err(CliError::Input(format!("--name: unknown coloring {other:?}"))),
            };
            let c = gen_named_coloring(&named)?;
            out.parameters.insert("name".into(), json!(name));
            match &named {
                NamedColoring::Sierpinski(n) => out.parameters.insert("n".into(), json!(n)),
                NamedColoring::Partition(b) => out.parameters.insert("blocks".into(), json!(b)),
            };
            let summary = json!({ "kind": "coloring", "ground": c.size(), "pairs1": c.pairs1().len() });
            out.files.push((format!("coloring_{name}_{}.json", c.size()), write_coloring(&c), summary));
            "coloring"
        }
    };

    std::fs::create_dir_all(&args.out).map_err(|e| CliError::Input(format!("cannot create {}: {e}", args.out.display())))?;
    let mut files = Vec::new();
    for (name, text, summary) in &out.files {
        let path = args.out.join(name);
        std::fs::write(&path, text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
        let mut entry = json!({
            "file": name,
            "sha256": hex::encode(Sha256::digest(text.as_bytes())),
            "bytes": text.len(),
        });
        if let (Value::Object(e), Value::Object(s)) = (&mut entry, summary) {
            e.extend(s.clone());
        }
        files.push(entry);
    }
    let manifest = json!({
        "generator": generator,
        "parameters": Value::Object(out.parameters),
        "files": files,
    });
    let text = pretty(&manifest);
    let path = args.out.join("manifest.json");
    std::fs::write(&path, &text).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?;
    Ok(text)
}
