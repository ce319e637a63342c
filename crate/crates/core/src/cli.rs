//! Command-line front end.
//!
//! Every subcommand maps its flags and input files to an exit code and a
//! report: 0 when the property holds or the check passes, 1 when it fails
//! (with a witness in the report), 2 on usage or input errors.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;

use clap::{Args, Parser, Subcommand};

use crate::dense::{between_image, search_countermodel, Carrier, DenseModel, LinearSet};
use crate::finite::{
    check_axiom, check_b9_finite_bounded, check_bounded_morphism, counterexample, disjoint_union, extension_finite,
    frame_valid_finite_with_budget, generated_subframe, ultrafilter_extension_finite, AxiomId, Construction, Coord,
    FiniteModel, Frame3, MorphismSpec, AXIOM_IDS, COUNTEREXAMPLE_NAMES, DEFAULT_BUDGET,
};
use crate::proof::{Derivation, Logic};
use crate::syntax::{builtin, parse, standard_translation, Formula};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "bhlogic",
    version,
    about = "Frames, models and derivations for hybrid betweenness logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct FormulaArg {
    /// Formula text, or the name of a built-in formula such as HB4
    #[arg(long)]
    formula: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a formula and print its canonical form
    Parse(FormulaArg),
    /// Check the first-order frame conditions on a frame
    FrameProps {
        #[arg(long)]
        frame: String,
        /// Check only this condition; the exit code then reflects it
        #[arg(long)]
        axiom: Option<String>,
    },
    /// Evaluate a formula in a finite model
    Eval {
        #[arg(long)]
        model: String,
        #[command(flatten)]
        formula: FormulaArg,
        /// Report truth at this world instead of global truth
        #[arg(long)]
        world: Option<usize>,
    },
    /// Decide frame validity on a finite frame
    Validity {
        #[arg(long)]
        frame: String,
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Verify a bounded morphism between two frames
    Morphism {
        /// Source frame, then target frame
        #[arg(long, num_args = 1, required = true)]
        frame: Vec<String>,
        /// Map file with `w -> v` lines, or an inline list such as "0 0 1"
        #[arg(long)]
        map: String,
        #[arg(long, default_value = "middle")]
        coord: String,
    },
    /// Print the disjoint union of frames
    Djunion {
        #[arg(long, num_args = 1, required = true)]
        frame: Vec<String>,
    },
    /// Print the subframe generated by some worlds
    Gensub {
        #[arg(long)]
        frame: String,
        /// Generating worlds, e.g. "0 2"
        #[arg(long)]
        worlds: String,
        #[arg(long, default_value = "middle")]
        coord: String,
    },
    /// Build the ultrafilter extension of a finite frame and check the
    /// isomorphism with the frame
    Ue {
        #[arg(long)]
        frame: String,
        #[arg(long, default_value = "middle")]
        coord: String,
    },
    /// Check Dedekind completeness on a finite frame
    B9 {
        #[arg(long)]
        frame: String,
        #[arg(long, default_value_t = 12)]
        bound: usize,
    },
    /// Rebuild and verify the non-definability constructions
    Counterexample {
        /// B1, B3, B4, B4(N), B5, B6, B8 or all
        #[arg(default_value = "all")]
        name: String,
    },
    /// Print the extension of a formula in a dense model
    DenseEval(DenseArgs),
    /// Check global truth of a formula in a dense model
    DenseCheck(DenseArgs),
    /// Search seeded random valuations for a countermodel
    DenseSearch {
        #[arg(long, default_value = "Q")]
        carrier: String,
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Check a derivation file
    ProofCheck {
        file: String,
        /// Overrides the logic declared in the file
        #[arg(long)]
        logic: Option<String>,
    },
    /// Print the standard first-order translation of a formula
    Translate {
        #[command(flatten)]
        formula: FormulaArg,
        #[arg(long, default_value = "x")]
        var: String,
    },
}

#[derive(Args, Debug)]
struct DenseArgs {
    /// Carrier, e.g. "Q", "Z", "R" or "Q [0,1]"
    #[arg(long)]
    carrier: Option<String>,
    /// Dense model file; --carrier and --val override its contents
    #[arg(long)]
    model: Option<String>,
    #[command(flatten)]
    formula: FormulaArg,
    /// Assignment such as "p=(0,1) {2}" or "i=1/2"
    #[arg(long)]
    val: Vec<String>,
}

type Outcome = Result<(i32, String), String>;

/// Runs the command line `args` (program name first) and returns the exit
/// code with the report text.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_HOLDS };
            return (code, e.render().to_string());
        }
    };
    match dispatch(cli.command) {
        Ok(out) => out,
        Err(msg) => (EXIT_USAGE, format!("error: {msg}\n")),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Parse(f) => cmd_parse(&f.formula),
        Command::FrameProps { frame, axiom } => cmd_frame_props(&frame, axiom.as_deref()),
        Command::Eval { model, formula, world } => cmd_eval(&model, &formula.formula, world),
        Command::Validity { frame, formula, budget } => cmd_validity(&frame, &formula.formula, budget),
        Command::Morphism { frame, map, coord } => cmd_morphism(&frame, &map, &coord),
        Command::Djunion { frame } => cmd_djunion(&frame),
        Command::Gensub { frame, worlds, coord } => cmd_gensub(&frame, &worlds, &coord),
        Command::Ue { frame, coord } => cmd_ue(&frame, &coord),
        Command::B9 { frame, bound } => cmd_b9(&frame, bound),
        Command::Counterexample { name } => cmd_counterexample(&name),
        Command::DenseEval(a) => cmd_dense_eval(&a),
        Command::DenseCheck(a) => cmd_dense_check(&a),
        Command::DenseSearch {
            carrier,
            formula,
            trials,
            seed,
        } => cmd_dense_search(&carrier, &formula.formula, trials, seed),
        Command::ProofCheck { file, logic } => cmd_proof_check(&file, logic.as_deref()),
        Command::Translate { formula, var } => cmd_translate(&formula.formula, &var),
    }
}

fn read(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
}

fn formula(text: &str) -> Result<Formula, String> {
    if let Some(f) = builtin(text.trim()) {
        return Ok(f);
    }
    parse(text).map_err(|e| format!("formula: {e}"))
}

fn load_frame(path: &str) -> Result<Frame3, String> {
    Frame3::parse(&read(path)?).map_err(|e| format!("{path}: {e}"))
}

fn coord(text: &str) -> Result<Coord, String> {
    text.parse().map_err(|e| format!("--coord: {e}"))
}

fn worlds(text: &str) -> Result<Vec<usize>, String> {
    text.split([' ', ',', '\t'])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("'{t}' is not a world")))
        .collect()
}

fn set_text(ws: impl IntoIterator<Item = usize>) -> String {
    let names: Vec<String> = ws.into_iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

fn tuple_text(ws: &[usize]) -> String {
    let names: Vec<String> = ws.iter().map(|w| w.to_string()).collect();
    format!("({})", names.join(","))
}

fn verdict(holds: bool) -> i32 {
    if holds {
        EXIT_HOLDS
    } else {
        EXIT_FAILS
    }
}

fn cmd_parse(text: &str) -> Outcome {
    let f = formula(text)?;
    let mut out = String::new();
    writeln!(out, "{f}").unwrap();
    writeln!(out, "size {}", f.size()).unwrap();
    writeln!(out, "depth {}", f.depth()).unwrap();
    writeln!(out, "props {}", f.props().into_iter().collect::<Vec<_>>().join(" ")).unwrap();
    writeln!(
        out,
        "nominals {}",
        f.nominals().into_iter().collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    writeln!(out, "pure {}", f.is_pure()).unwrap();
    Ok((EXIT_HOLDS, out))
}

fn cmd_frame_props(path: &str, only: Option<&str>) -> Outcome {
    let frame = load_frame(path)?;
    let ids: Vec<AxiomId> = match only {
        Some(name) => vec![name.parse().map_err(|e| format!("--axiom: {e}"))?],
        None => AXIOM_IDS.to_vec(),
    };
    let mut out = String::new();
    let mut all = true;
    for id in &ids {
        let r = check_axiom(&frame, *id);
        all &= r.holds;
        match r.witness {
            None => writeln!(out, "{id}: holds").unwrap(),
            Some(w) => {
                let binding: Vec<String> = id.variables().iter().zip(&w).map(|(v, x)| format!("{v}={x}")).collect();
                writeln!(out, "{id}: fails at {}", binding.join(" ")).unwrap();
            }
        }
    }
    let code = if only.is_some() { verdict(all) } else { EXIT_HOLDS };
    Ok((code, out))
}

fn cmd_eval(path: &str, text: &str, world: Option<usize>) -> Outcome {
    let model = FiniteModel::parse(&read(path)?).map_err(|e| format!("{path}: {e}"))?;
    let f = formula(text)?;
    let ext = extension_finite(&model, &f).map_err(|e| e.to_string())?;
    let mut out = format!("extension {}\n", set_text(ext.iter().copied()));
    let holds = match world {
        Some(w) => {
            if w >= model.frame.worlds() {
                return Err(format!("world {w} is not in the model"));
            }
            let t = ext.contains(&w);
            writeln!(out, "at {w}: {t}").unwrap();
            t
        }
        None => {
            let t = ext.len() == model.frame.worlds();
            writeln!(out, "globally true: {t}").unwrap();
            t
        }
    };
    Ok((verdict(holds), out))
}

fn cmd_validity(path: &str, text: &str, budget: u64) -> Outcome {
    let frame = load_frame(path)?;
    let f = formula(text)?;
    let r = frame_valid_finite_with_budget(&frame, &f, budget).map_err(|e| e.to_string())?;
    let mut out = String::new();
    if r.holds {
        writeln!(out, "valid ({} valuations)", r.valuations).unwrap();
    } else {
        writeln!(out, "not valid").unwrap();
        if let Some(w) = r.world {
            writeln!(out, "fails at world {w} in the model").unwrap();
        }
        if let Some(m) = &r.countermodel {
            write!(out, "{m}").unwrap();
        }
    }
    Ok((verdict(r.holds), out))
}

/// Reads a map either from a file of `w -> v` lines or inline as a list of
/// images in source order.
fn load_map(text: &str, source_worlds: usize) -> Result<Vec<usize>, String> {
    let Ok(content) = fs::read_to_string(text) else {
        return worlds(text);
    };
    let mut map = vec![None; source_worlds];
    for (n, raw) in content.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| format!("{text}: line {}: {m}", n + 1);
        let (w, v) = line
            .split_once("->")
            .ok_or_else(|| err(format!("expected 'w -> v', found '{line}'")))?;
        let w: usize = w
            .trim()
            .parse()
            .map_err(|_| err(format!("'{}' is not a world", w.trim())))?;
        let v: usize = v
            .trim()
            .parse()
            .map_err(|_| err(format!("'{}' is not a world", v.trim())))?;
        let slot = map
            .get_mut(w)
            .ok_or_else(|| err(format!("world {w} is not in the source frame")))?;
        if slot.replace(v).is_some() {
            return Err(err(format!("world {w} mapped twice")));
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(w, v)| v.ok_or_else(|| format!("{text}: world {w} is not mapped")))
        .collect()
}

fn cmd_morphism(frames: &[String], map: &str, coord_text: &str) -> Outcome {
    let [src, tgt] = frames else {
        return Err("morphism takes exactly two --frame files, source then target".into());
    };
    let source = load_frame(src)?;
    let target = load_frame(tgt)?;
    let map = load_map(map, source.worlds())?;
    let spec = MorphismSpec {
        source,
        target,
        map,
        coord: coord(coord_text)?,
    };
    let r = check_bounded_morphism(&spec).map_err(|e| e.to_string())?;
    let mut out = String::new();
    match &r.forth.witness {
        None => writeln!(out, "forth: holds").unwrap(),
        Some(t) => writeln!(out, "forth: fails, image of {} is missing", tuple_text(t)).unwrap(),
    }
    match &r.back.witness {
        None => writeln!(out, "back: holds").unwrap(),
        Some(w) => writeln!(
            out,
            "back: fails at {} for target worlds {},{}; failing worlds {}",
            w[0],
            w[1],
            w[2],
            set_text(r.back_failures.iter().copied())
        )
        .unwrap(),
    }
    writeln!(out, "surjective: {}", r.surjective).unwrap();
    Ok((verdict(r.holds()), out))
}

fn cmd_djunion(paths: &[String]) -> Outcome {
    let frames = paths.iter().map(|p| load_frame(p)).collect::<Result<Vec<_>, _>>()?;
    Ok((EXIT_HOLDS, disjoint_union(&frames).to_string()))
}

fn cmd_gensub(path: &str, seeds: &str, coord_text: &str) -> Outcome {
    let frame = load_frame(path)?;
    let seeds: BTreeSet<usize> = worlds(seeds)?.into_iter().collect();
    let (sub, incl) = generated_subframe(&frame, &seeds, coord(coord_text)?).map_err(|e| e.to_string())?;
    let mut out = sub.to_string();
    let pairs: Vec<String> = incl.iter().enumerate().map(|(k, w)| format!("{k}->{w}")).collect();
    writeln!(out, "# inclusion {}", pairs.join(" ")).unwrap();
    Ok((EXIT_HOLDS, out))
}

fn cmd_ue(path: &str, coord_text: &str) -> Outcome {
    let frame = load_frame(path)?;
    let r = ultrafilter_extension_finite(&frame, coord(coord_text)?).map_err(|e| e.to_string())?;
    let mut out = r.frame.to_string();
    let pairs: Vec<String> = r.iso.iter().enumerate().map(|(w, u)| format!("{w}->{u}")).collect();
    writeln!(out, "# principal ultrafilters {}", pairs.join(" ")).unwrap();
    match &r.report.witness {
        None => writeln!(out, "isomorphism: verified").unwrap(),
        Some(w) => writeln!(out, "isomorphism: fails at {}", tuple_text(w)).unwrap(),
    }
    Ok((verdict(r.report.holds), out))
}

fn cmd_b9(path: &str, bound: usize) -> Outcome {
    let frame = load_frame(path)?;
    let r = check_b9_finite_bounded(&frame, bound).map_err(|e| e.to_string())?;
    let out = match &r.sets {
        None => "B9: holds\n".to_string(),
        Some((xs, ys)) => format!(
            "B9: fails for X={} Y={}\n",
            set_text(xs.iter().copied()),
            set_text(ys.iter().copied())
        ),
    };
    Ok((verdict(r.holds), out))
}

fn labelled_frame(out: &mut String, title: &str, f: &Frame3, labels: &[String]) {
    let names: Vec<String> = f
        .triples()
        .map(|(x, y, z)| format!("({},{},{})", labels[x], labels[y], labels[z]))
        .collect();
    writeln!(out, "{title} ({} worlds): {}", f.worlds(), names.join(" ")).unwrap();
}

fn cmd_counterexample(name: &str) -> Outcome {
    let names: Vec<&str> = if name.trim() == "all" {
        COUNTEREXAMPLE_NAMES.to_vec()
    } else {
        vec![name]
    };
    let mut out = String::new();
    let mut all = true;
    for n in names {
        let c = counterexample(n).map_err(|e| e.to_string())?;
        writeln!(out, "== {} ({})", c.name, c.axiom).unwrap();
        match &c.construction {
            Construction::Morphism {
                spec,
                source_labels,
                target_labels,
                ..
            } => {
                labelled_frame(&mut out, "source", &spec.source, source_labels);
                labelled_frame(&mut out, "target", &spec.target, target_labels);
                let arrows: Vec<String> = spec
                    .map
                    .iter()
                    .enumerate()
                    .map(|(w, v)| format!("{}->{}", source_labels[w], target_labels[*v]))
                    .collect();
                writeln!(out, "map: {}", arrows.join(" ")).unwrap();
            }
            Construction::Union { parts, union, labels } => {
                for (k, p) in parts.iter().enumerate() {
                    writeln!(out, "part {}: {}", k + 1, p.to_string().trim_end().replace('\n', "; ")).unwrap();
                }
                labelled_frame(&mut out, "union", union, labels);
            }
            Construction::Subframe { carrier, points } => {
                let full = LinearSet::full(carrier);
                writeln!(out, "carrier {carrier}").unwrap();
                writeln!(out, "between image {}", between_image(carrier, &full, &full)).unwrap();
                writeln!(out, "points {} {}", points[0], points[1]).unwrap();
            }
        }
        let v = c.verify().map_err(|e| e.to_string())?;
        write!(out, "{v}").unwrap();
        if v.passed() {
            writeln!(
                out,
                "construction verified: {} fails on the target as expected",
                c.axiom
            )
            .unwrap();
        } else {
            writeln!(out, "construction NOT verified").unwrap();
        }
        all &= v.passed();
    }
    Ok((verdict(all), out))
}

fn dense_model(a: &DenseArgs) -> Result<DenseModel, String> {
    let base = match &a.model {
        Some(path) => Some(DenseModel::parse(&read(path)?).map_err(|e| format!("{path}: {e}"))?),
        None => None,
    };
    let mut m = match (&a.carrier, base) {
        (Some(text), base) => {
            let carrier: Carrier = text.parse().map_err(|e| format!("--carrier: {e}"))?;
            let mut m = DenseModel::new(carrier);
            if let Some(b) = base {
                for (p, s) in b.props() {
                    m.assign(&format!("{p}={s}"))?;
                }
                for (i, x) in b.noms() {
                    m.assign(&format!("{i}={x}"))?;
                }
            }
            m
        }
        (None, Some(b)) => b,
        (None, None) => return Err("give --carrier or --model".into()),
    };
    for v in &a.val {
        m.assign(v).map_err(|e| format!("--val {v}: {e}"))?;
    }
    Ok(m)
}

fn cmd_dense_eval(a: &DenseArgs) -> Outcome {
    let m = dense_model(a)?;
    let f = formula(&a.formula.formula)?;
    let ext = m.extension(&f).map_err(|e| e.to_string())?;
    Ok((EXIT_HOLDS, format!("extension {ext}\n")))
}

fn cmd_dense_check(a: &DenseArgs) -> Outcome {
    let m = dense_model(a)?;
    let f = formula(&a.formula.formula)?;
    let r = m.holds_everywhere(&f).map_err(|e| e.to_string())?;
    let out = match &r.witness {
        None => "holds\n".to_string(),
        Some(x) => format!("fails at {x}\n"),
    };
    Ok((verdict(r.holds), out))
}

fn cmd_dense_search(carrier: &str, text: &str, trials: u64, seed: u64) -> Outcome {
    let carrier: Carrier = carrier.parse().map_err(|e| format!("--carrier: {e}"))?;
    let f = formula(text)?;
    match search_countermodel(&carrier, &f, trials, seed).map_err(|e| e.to_string())? {
        None => Ok((EXIT_HOLDS, format!("no countermodel in {trials} trials\n"))),
        Some(cm) => Ok((
            EXIT_FAILS,
            format!(
                "countermodel at trial {}, fails at {}\n{}",
                cm.trial, cm.witness, cm.model
            ),
        )),
    }
}

fn cmd_proof_check(path: &str, logic: Option<&str>) -> Outcome {
    let mut d = Derivation::parse(&read(path)?).map_err(|e| format!("{path}: {e}"))?;
    if let Some(l) = logic {
        d.logic = l.parse::<Logic>().map_err(|e| e.to_string())?;
    }
    let mut out = String::new();
    for idx in 0..d.lines.len() {
        let label = d.lines[idx].label;
        if let Err(e) = d.check_line(idx) {
            writeln!(out, "{path}: rejected: {e}").unwrap();
            return Ok((EXIT_FAILS, out));
        }
        writeln!(out, "{label}. ok").unwrap();
    }
    match d.conclusion() {
        Some(c) => writeln!(out, "proved in {}: {c}", d.logic).unwrap(),
        None => writeln!(out, "empty derivation").unwrap(),
    }
    Ok((EXIT_HOLDS, out))
}

fn cmd_translate(text: &str, var: &str) -> Outcome {
    let f = formula(text)?;
    Ok((EXIT_HOLDS, format!("{}\n", standard_translation(&f, var))))
}
