//! Command-line driver for the Platonic tessellation census.
//!
//! Subcommands: `enumerate`, `properties`, `group`, `subdivide`, `augktg`.
//! Exit codes: 0 success, 2 invalid input, 3 resource budget exceeded.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::process::ExitCode;

use platonic_census::augktg;
use platonic_census::cubulation;
use platonic_census::enumerate::{census_file_string, parse_census_file};
use platonic_census::invariants::{self, profile_report_line, EscalationRule};
use platonic_census::*;

const USAGE: &str = "\
platonic - enumerate hyperbolic Platonic tessellations and their invariants

USAGE:
  platonic enumerate --schlafli p,q,r --max-solids M [--orientable yes|no|both]
                     [--threads N] [--memory-budget BYTES] --out PATH
  platonic properties (--sig SIG | --census FILE)
  platonic group --census FILE [--out PATH] [--escalate H1:DEGREE:cyclic|full]...
  platonic subdivide --mode two-coloring|appendix --census FILE [--out PATH]
  platonic augktg --a-moves N [--threads N] --out PATH

The default thread count comes from PLATONIC_THREADS (else 1). Census files
hold one signature per line, sorted, with `#` header comments. Escalation
rules give the homology in compact form (rank;d1,d2,...), e.g.
`0;5,5,5:5:cyclic` appends degree-5 cyclic covers on that collision.
";

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    match run(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            eprintln!("{USAGE}");
            ExitCode::from(2)
        }
        Err(CliError::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Budget(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

enum CliError {
    Usage(String),
    Invalid(String),
    Budget(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Invalid(msg.into()))
}

struct Flags {
    values: BTreeMap<String, Vec<String>>,
}

impl Flags {
    fn parse(args: &[String]) -> Result<Flags, CliError> {
        let mut values: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut i = 0;
        while i < args.len() {
            let Some(name) = args[i].strip_prefix("--") else {
                return Err(CliError::Usage(format!("unexpected argument `{}`", args[i])));
            };
            let Some(value) = args.get(i + 1) else {
                return Err(CliError::Usage(format!("flag --{name} needs a value")));
            };
            values.entry(name.to_string()).or_default().push(value.clone());
            i += 2;
        }
        Ok(Flags { values })
    }

    fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(|v| v[0].as_str())
    }

    fn require(&self, name: &str) -> Result<&str, CliError> {
        self.get(name)
            .ok_or_else(|| CliError::Usage(format!("missing --{name}")))
    }

    fn all(&self, name: &str) -> impl Iterator<Item = &str> {
        self.values.get(name).into_iter().flatten().map(|s| s.as_str())
    }
}

fn default_threads() -> usize {
    std::env::var("PLATONIC_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1)
}

fn parse_schlafli(s: &str) -> Result<SchlafliType, CliError> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return invalid(format!("--schlafli expects p,q,r, got `{s}`"));
    }
    let nums: Vec<u32> = parts
        .iter()
        .map(|x| x.parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Invalid(format!("bad Schläfli symbol `{s}`")))?;
    SchlafliType::new(nums[0], nums[1], nums[2]).map_err(|e| CliError::Invalid(e.to_string()))
}

fn run(args: &[String]) -> Result<(), CliError> {
    let Some(command) = args.first() else {
        return Err(CliError::Usage("no subcommand".into()));
    };
    let flags = Flags::parse(&args[1..])?;
    match command.as_str() {
        "enumerate" => cmd_enumerate(&flags),
        "properties" => cmd_properties(&flags),
        "group" => cmd_group(&flags),
        "subdivide" => cmd_subdivide(&flags),
        "augktg" => cmd_augktg(&flags),
        other => Err(CliError::Usage(format!("unknown subcommand `{other}`"))),
    }
}

fn run_one_census(
    schlafli: SchlafliType,
    max_solids: usize,
    orientable: bool,
    threads: usize,
    memory_budget: Option<usize>,
    out: &str,
) -> Result<(), CliError> {
    let mut cfg = SearchConfig::new(schlafli, max_solids, orientable).threads(threads);
    cfg.memory_budget = memory_budget;
    let result = match enumerate(cfg) {
        Ok(r) => r,
        Err(e @ SearchError::BudgetExceeded { .. }) => {
            return Err(CliError::Budget(e.to_string()));
        }
        Err(e) => return invalid(e.to_string()),
    };
    std::fs::write(out, census_file_string(&result))?;
    let tally: Vec<String> = result
        .tally()
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    println!(
        "{} {} {}",
        schlafli,
        if orientable { "orientable" } else { "non-orientable" },
        tally.join(" ")
    );
    Ok(())
}

fn cmd_enumerate(flags: &Flags) -> Result<(), CliError> {
    let schlafli = parse_schlafli(flags.require("schlafli")?)?;
    let max_solids: usize = flags
        .require("max-solids")?
        .parse()
        .map_err(|_| CliError::Invalid("bad --max-solids".into()))?;
    let threads = match flags.get("threads") {
        Some(t) => t.parse().map_err(|_| CliError::Invalid("bad --threads".into()))?,
        None => default_threads(),
    };
    let memory_budget = match flags.get("memory-budget") {
        Some(b) => Some(
            b.parse()
                .map_err(|_| CliError::Invalid("bad --memory-budget".into()))?,
        ),
        None => None,
    };
    let out = flags.require("out")?;
    match flags.get("orientable").unwrap_or("yes") {
        "yes" => run_one_census(schlafli, max_solids, true, threads, memory_budget, out),
        "no" => run_one_census(schlafli, max_solids, false, threads, memory_budget, out),
        "both" => {
            run_one_census(
                schlafli,
                max_solids,
                true,
                threads,
                memory_budget,
                &format!("{out}.yes"),
            )?;
            run_one_census(
                schlafli,
                max_solids,
                false,
                threads,
                memory_budget,
                &format!("{out}.no"),
            )
        }
        other => invalid(format!("--orientable must be yes|no|both, got `{other}`")),
    }
}

fn load_sigs(flags: &Flags) -> Result<Vec<SpecializedIsoSig>, CliError> {
    if let Some(sig) = flags.get("sig") {
        let sig = SpecializedIsoSig::parse(sig).map_err(|e| CliError::Invalid(e.to_string()))?;
        return Ok(vec![sig]);
    }
    if let Some(path) = flags.get("census") {
        let text = std::fs::read_to_string(path)?;
        return parse_census_file(&text).map_err(|e| CliError::Invalid(e.to_string()));
    }
    Err(CliError::Usage("need --sig or --census".into()))
}

fn cmd_properties(flags: &Flags) -> Result<(), CliError> {
    let sigs = load_sigs(flags)?;
    for sig in &sigs {
        let t = triangulation_from_sig(sig);
        let auts = automorphisms(&t).map_err(|e| CliError::Invalid(e.to_string()))?;
        let h1 = first_homology(&t).map_err(|e| CliError::Invalid(e.to_string()))?;
        let self_dual = if sig.schlafli().is_self_dual_type() {
            let d = dual(&t).map_err(|e| CliError::Invalid(e.to_string()))?;
            let dsig = specialized_iso_sig(&d).map_err(|e| CliError::Invalid(e.to_string()))?;
            if dsig == *sig {
                "yes"
            } else {
                "no"
            }
        } else {
            "-"
        };
        let orientable = t.is_orientable();
        let regular = if orientable {
            auts.flag_transitive_oriented
        } else {
            auts.flag_transitive
        };
        let chiral = match auts.orientation_reversing_exists {
            Some(true) => "no",
            Some(false) => "yes",
            None => "-",
        };
        let cusps = if sig.schlafli().is_cusped() {
            num_cusps(&t)
        } else {
            0
        };
        let hom_link = if sig.schlafli().is_cusped() && orientable {
            if is_homology_link(&t).map_err(|e| CliError::Invalid(e.to_string()))? {
                "yes"
            } else {
                "no"
            }
        } else {
            "-"
        };
        println!(
            "{sig}\n  solids {}  orientable {}  self_dual {}  regular {}  chiral {}  aut_order {}  H1 {}  cusps {}  homology_link {}",
            sig.num_solids(),
            if orientable { "yes" } else { "no" },
            self_dual,
            if regular { "yes" } else { "no" },
            chiral,
            auts.order,
            h1,
            cusps,
            hom_link,
        );
    }
    Ok(())
}

fn parse_escalation(rule: &str) -> Result<EscalationRule, CliError> {
    // H1:DEGREE:cyclic|full with H1 in compact form rank;d1,d2,...
    let parts: Vec<&str> = rule.split(':').collect();
    if parts.len() != 3 {
        return invalid(format!("bad --escalate rule `{rule}`"));
    }
    let (rank_part, torsion_part) = parts[0]
        .split_once(';')
        .ok_or_else(|| CliError::Invalid(format!("bad homology in rule `{rule}`")))?;
    let rank: usize = rank_part
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad rank in rule `{rule}`")))?;
    let torsion: Vec<u64> = if torsion_part.is_empty() {
        Vec::new()
    } else {
        torsion_part
            .split(',')
            .map(|d| d.parse())
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Invalid(format!("bad torsion in rule `{rule}`")))?
    };
    let degree: usize = parts[1]
        .parse()
        .map_err(|_| CliError::Invalid(format!("bad degree in rule `{rule}`")))?;
    let cyclic_only = match parts[2] {
        "cyclic" => true,
        "full" => false,
        other => return invalid(format!("rule kind must be cyclic|full, got `{other}`")),
    };
    Ok(EscalationRule {
        h1: AbelianGroup::from_parts(rank, &torsion),
        degree,
        cyclic_only,
    })
}

/// Provisional census name per the naming scheme; `~` marks that indices
/// are ordered by this crate's signatures and may not match published ones.
fn provisional_name(
    schlafli: SchlafliType,
    orientable: bool,
    solids: usize,
    index: usize,
) -> String {
    format!(
        "~{}{}{}{:02}_{:05}",
        if orientable { "o" } else { "n" },
        schlafli.solid_name(),
        if schlafli.is_closed() { "cld" } else { "" },
        solids,
        index
    )
}

fn cmd_group(flags: &Flags) -> Result<(), CliError> {
    let sigs = load_sigs(flags)?;
    let mut rules = invariants::default_escalation_rules();
    for rule in flags.all("escalate") {
        rules.push(parse_escalation(rule)?);
    }
    let groups = invariants::group_by_profile(&sigs, &rules)
        .map_err(|e| CliError::Invalid(e.to_string()))?;

    // groups ordered by smallest member signature; indices per solid count
    let mut ordered: Vec<Vec<usize>> = groups;
    ordered.sort_by_key(|g| sigs[g[0]].clone());
    let mut report = String::new();
    let mut profile_lines = String::new();
    let mut index_per_count: BTreeMap<usize, usize> = BTreeMap::new();
    for group in &ordered {
        let first = &sigs[group[0]];
        let t = triangulation_from_sig(first);
        let solids = first.num_solids();
        let orientable = t.is_orientable();
        let index = index_per_count.entry(solids).or_insert(0);
        let name = provisional_name(first.schlafli(), orientable, solids, *index);
        *index += 1;
        for (j, &member) in group.iter().enumerate() {
            let suffix = if group.len() > 1 {
                format!("#{j}")
            } else {
                String::new()
            };
            writeln!(report, "{name}{suffix} {}", sigs[member]).unwrap();
        }
        writeln!(report).unwrap();
        for &member in group {
            let mt = triangulation_from_sig(&sigs[member]);
            let p = invariants::profile(&mt, &rules)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            writeln!(profile_lines, "{}", profile_report_line(&sigs[member], &p)).unwrap();
        }
    }
    println!("{} tessellations in {} groups", sigs.len(), ordered.len());
    if let Some(out) = flags.get("out") {
        std::fs::write(out, &report)?;
        std::fs::write(format!("{out}.profiles"), &profile_lines)?;
    } else {
        print!("{report}");
    }
    Ok(())
}

fn cmd_subdivide(flags: &Flags) -> Result<(), CliError> {
    let mode = flags.require("mode")?.to_string();
    let sigs = load_sigs(flags)?;
    let mut report = String::new();
    match mode.as_str() {
        "two-coloring" => {
            for sig in &sigs {
                let t = triangulation_from_sig(sig);
                let subs = cubulation::subdivide_two_coloring(&t)
                    .map_err(|e| CliError::Invalid(e.to_string()))?;
                writeln!(report, "{sig} -> {} tetrahedral tessellations", subs.len()).unwrap();
                for s in &subs {
                    let ssig =
                        specialized_iso_sig(s).map_err(|e| CliError::Invalid(e.to_string()))?;
                    writeln!(report, "  {ssig}").unwrap();
                }
            }
        }
        "appendix" => {
            for sig in &sigs {
                let t = triangulation_from_sig(sig);
                let c = cubulation::CubeComplex::from_triangulation(&t)
                    .map_err(|e| CliError::Invalid(e.to_string()))?;
                let gt = cubulation::subdivide_appendix(&c);
                let v = gt.validate();
                writeln!(
                    report,
                    "{sig} -> {} tetrahedra, valid {}, free faces {}",
                    gt.len(),
                    v.valid,
                    v.free_faces
                )
                .unwrap();
                for line in gt.to_text().lines() {
                    writeln!(report, "  {line}").unwrap();
                }
            }
        }
        other => return invalid(format!("--mode must be two-coloring|appendix, got `{other}`")),
    }
    match flags.get("out") {
        Some(out) => std::fs::write(out, &report)?,
        None => print!("{report}"),
    }
    Ok(())
}

fn cmd_augktg(flags: &Flags) -> Result<(), CliError> {
    let n: usize = flags
        .require("a-moves")?
        .parse()
        .map_err(|_| CliError::Invalid("bad --a-moves".into()))?;
    let threads = match flags.get("threads") {
        Some(t) => t.parse().map_err(|_| CliError::Invalid("bad --threads".into()))?,
        None => default_threads(),
    };
    let out = flags.require("out")?;
    let diagrams = augktg::enumerate_augktg(n, threads);
    let mut text = String::new();
    for d in &diagrams {
        writeln!(text, "{} {}", d.sig, d.pd).unwrap();
    }
    writeln!(
        text,
        "# a-moves {n} diagrams {} octahedra {}",
        diagrams.len(),
        2 * (n + 1)
    )
    .unwrap();
    std::fs::write(out, &text)?;
    println!("a-moves {n}: {} diagrams", diagrams.len());
    Ok(())
}
