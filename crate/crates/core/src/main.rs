//! Command-line front end: classification queries, label algebra, fusion
//! products, modular data, verification suites and plot-data emission.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error (invalid level,
//! degenerate parameter, off-level modular requests), 3 internal invariant
//! failure.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sl3mm::admissible::{classify, counts, enumerate_admissible, AdmType, Orbit};
use sl3mm::degen::{
    atypicality_degree, decompose_rel, decompose_semi, top_support_points, GrClass,
};
use sl3mm::fusion32::fuse;
use sl3mm::modlabel::{
    canonicalize, hex_norm, parse_label, parse_label_class, positive_energy_flow_image,
    CanonicalLabel, Core, CosetQ, ModuleLabel, ParsedLabel,
};
use sl3mm::modularchar::{
    ensure_m32, eta_inv_fourth, hw_s_entry, semi_relaxed_s_entry, standard_s_entry, HwClass,
    SMatrixEntry,
};
use sl3mm::rootdata::{
    central_charge, comega2, conformal_weight, d6_compose, unit_coweights, Coweight, D6Element,
    Level, Rat, Weight,
};
use sl3mm::torusfourier::{FourierPoly, TRUNCATION_RADIUS};
use sl3mm::verify::{run_suite, SUITES};
use std::fmt::Write as _;
use std::process::ExitCode;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "sl3mm",
    about = "Exact arithmetic for the admissible-level sl3 minimal models",
    version
)]
struct Cli {
    /// Level numerator u (k = -3 + u/v)
    #[arg(long, global = true, default_value_t = 3)]
    u: i64,
    /// Level denominator v
    #[arg(long, global = true, default_value_t = 2)]
    v: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SuiteName {
    Rootdata,
    Admissible,
    Labels,
    Degen,
    Modular,
    Verlinde,
    Fusion,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SKind {
    Standard,
    Vacuum,
    Semi,
    Hw,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum HwName {
    Vacuum,
    Omega1,
    Omega2,
    Rho,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PlotFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate and classify the admissible spectrum of M(u,v)
    Classify,
    /// Canonical form of a label
    Canon { label: String },
    /// Apply a D6 word (tokens w1 w2 w3 d c) to a label
    Twist { word: String, label: String },
    /// Apply the spectral flow sf(c1,c2) to a label
    Flow { c1: i64, c2: i64, label: String },
    /// Decompose a reducible family member into irreducibles
    Degen { label: String },
    /// Positive-energy spectral-flow orbit of a label, with adjacency
    Orbit { label: String },
    /// Grothendieck fusion product of two labels (M(3,2) only)
    Fuse { a: String, b: String },
    /// Exact S-matrix entries
    Smatrix {
        #[arg(value_enum)]
        kind: SKind,
        /// row flow xi as "c1,c2"
        #[arg(long, default_value = "0,0")]
        flow: String,
        /// column flow xi' as "c1,c2"
        #[arg(long, default_value = "0,0")]
        flow2: String,
        /// relaxed coset "a,b" for standard entries
        #[arg(long)]
        coset: Option<String>,
        /// line parameter t for semirelaxed entries
        #[arg(long)]
        t: Option<String>,
        /// D6 word twisting a semirelaxed row
        #[arg(long, default_value = "")]
        twist: String,
        /// highest-weight class for kind=hw
        #[arg(long, value_enum, default_value_t = HwName::Vacuum)]
        class: HwName,
        /// expansion order for the geometric completion
        #[arg(long)]
        expand: Option<u32>,
    },
    /// q-expansion data of a relaxed character
    Char {
        label: String,
        #[arg(long, default_value_t = 10)]
        order: usize,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteName::All)]
        suite: SuiteName,
    },
    /// Emit the top-space weight support of a label for plotting
    PlotWeights {
        label: String,
        #[arg(long)]
        out: std::path::PathBuf,
        #[arg(long)]
        radius: Option<i64>,
        #[arg(long, value_enum, default_value_t = PlotFormat::Csv)]
        plot_format: PlotFormat,
    },
}

type CliResult = Result<(), Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(move || run(cli)) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(_) => {
            eprintln!("internal invariant failure");
            ExitCode::from(3)
        }
    }
}

fn truncation_radius() -> i64 {
    std::env::var("SL3MM_TRUNCATION")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(TRUNCATION_RADIUS)
}

fn parse_coweight(s: &str) -> Result<Coweight, Box<dyn std::error::Error>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"c1,c2\", got {s}").into());
    }
    Ok(Coweight::new(
        parts[0].trim().parse()?,
        parts[1].trim().parse()?,
    ))
}

fn parse_rat(s: &str) -> Result<Rat, Box<dyn std::error::Error>> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        Ok(Rat::new(n.trim().parse()?, d.trim().parse()?))
    } else {
        Ok(Rat::from_integer(s.parse()?))
    }
}

fn parse_weight_pair(s: &str) -> Result<Weight, Box<dyn std::error::Error>> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(format!("expected \"a,b\", got {s}").into());
    }
    Ok(Weight::new(parse_rat(parts[0])?, parse_rat(parts[1])?))
}

fn parse_word(s: &str) -> Result<D6Element, Box<dyn std::error::Error>> {
    let mut g = D6Element::identity();
    for tok in s.split_whitespace() {
        let next = match tok {
            "w1" => D6Element::w1(),
            "w2" => D6Element::w2(),
            "w3" => D6Element::w3(),
            "d" => D6Element::dynkin_flip(),
            "c" => D6Element::conjugation(),
            "e" => D6Element::identity(),
            _ => return Err(format!("unknown D6 token {tok}").into()),
        };
        g = d6_compose(g, next);
    }
    Ok(g)
}

/// Print without panicking when the consumer closes the pipe early.
fn out_line(line: &str) {
    use std::io::Write;
    let stdout = std::io::stdout();
    let _ = writeln!(stdout.lock(), "{line}");
}

fn emit(format: Format, text: String, json: Value) {
    match format {
        Format::Text => out_line(&text),
        Format::Json => out_line(&serde_json::to_string_pretty(&json).unwrap()),
    }
}

fn gr_class_json(g: &GrClass) -> Value {
    let product: Vec<Value> = g.iter().map(|(l, m)| json!([l.to_string(), m])).collect();
    json!(product)
}

fn fourier_poly_json(p: &FourierPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(f, c)| {
            let coeff: Vec<Value> = c
                .terms()
                .map(|(a, m)| json!({"angle": a.angle().to_string(), "mult": m}))
                .collect();
            json!({"frequency": [f.c1, f.c2], "coefficient": coeff})
        })
        .collect();
    json!(terms)
}

fn s_entry_json(e: &SMatrixEntry) -> Value {
    let terms: Vec<Value> = e
        .terms
        .iter()
        .map(|t| {
            json!({
                "numerator": fourier_poly_json(&t.numerator),
                "denominator": fourier_poly_json(&t.denominator),
                "cone": [[t.cone.0.c1, t.cone.0.c2], [t.cone.1.c1, t.cone.1.c2]],
            })
        })
        .collect();
    json!(terms)
}

/// Grothendieck class of a parsed label, expanding degenerate parameters.
fn gr_of_parsed(p: ParsedLabel, lvl: Level) -> Result<GrClass, Box<dyn std::error::Error>> {
    match p {
        ParsedLabel::Irreducible(m) => Ok(GrClass::of(canonicalize(&m, lvl))),
        ParsedLabel::Degenerate { flow, twist, core } => {
            let base = match core {
                Core::Semi { family, t } => decompose_semi(family, t, lvl)?,
                Core::Rel { family, coset } => decompose_rel(family, coset, lvl)?,
                Core::Hw(_) => unreachable!("highest-weight labels are never degenerate"),
            };
            Ok(base.twisted(twist, lvl).flowed(flow, lvl))
        }
    }
}

fn run(cli: Cli) -> CliResult {
    let lvl = Level::new(cli.u, cli.v)?;
    match cli.command {
        Command::Classify => classify_cmd(lvl, cli.format),
        Command::Canon { label } => {
            let m = parse_label(&label, lvl)?;
            let c = canonicalize(&m, lvl);
            emit(
                cli.format,
                c.to_string(),
                json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "input": label,
                    "canonical": c.to_string(),
                }),
            );
            Ok(())
        }
        Command::Twist { word, label } => {
            let g = parse_word(&word)?;
            let m = parse_label(&label, lvl)?;
            let c = canonicalize(&m.twisted(g), lvl);
            emit(
                cli.format,
                c.to_string(),
                json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "twist": g.to_string(),
                    "result": c.to_string(),
                }),
            );
            Ok(())
        }
        Command::Flow { c1, c2, label } => {
            let m = parse_label(&label, lvl)?;
            let c = canonicalize(&m.flowed(Coweight::new(c1, c2)), lvl);
            emit(
                cli.format,
                c.to_string(),
                json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "flow": [c1, c2],
                    "result": c.to_string(),
                }),
            );
            Ok(())
        }
        Command::Degen { label } => {
            let parsed = parse_label_class(&label, lvl)?;
            match parsed {
                ParsedLabel::Irreducible(m) => Err(format!(
                    "label {} is irreducible (atypicality degree {}); nothing to decompose",
                    label,
                    atypicality_degree(&m.core, lvl)?
                )
                .into()),
                degenerate => {
                    let g = gr_of_parsed(degenerate, lvl)?;
                    emit(
                        cli.format,
                        g.to_string(),
                        json!({
                            "schemaVersion": SCHEMA_VERSION,
                            "input": label,
                            "decomposition": gr_class_json(&g),
                        }),
                    );
                    Ok(())
                }
            }
        }
        Command::Orbit { label } => orbit_cmd(&label, lvl, cli.format),
        Command::Fuse { a, b } => {
            ensure_m32(lvl)?;
            let ga = gr_of_parsed(parse_label_class(&a, lvl)?, lvl)?;
            let gb = gr_of_parsed(parse_label_class(&b, lvl)?, lvl)?;
            let product = fuse(&ga, &gb, lvl)?;
            emit(
                cli.format,
                format!("{a} x {b} = {product}"),
                json!({
                    "schemaVersion": SCHEMA_VERSION,
                    "factors": [a, b],
                    "product": gr_class_json(&product),
                }),
            );
            Ok(())
        }
        Command::Smatrix {
            kind,
            flow,
            flow2,
            coset,
            t,
            twist,
            class,
            expand,
        } => smatrix_cmd(
            lvl, cli.format, kind, &flow, &flow2, coset, t, &twist, class, expand,
        ),
        Command::Char { label, order } => char_cmd(&label, order, lvl, cli.format),
        Command::Verify { suite } => {
            let name = match suite {
                SuiteName::Rootdata => "rootdata",
                SuiteName::Admissible => "admissible",
                SuiteName::Labels => "labels",
                SuiteName::Degen => "degen",
                SuiteName::Modular => "modular",
                SuiteName::Verlinde => "verlinde",
                SuiteName::Fusion => "fusion",
                SuiteName::All => "all",
            };
            debug_assert!(SUITES.contains(&name));
            let results = run_suite(name).expect("suite names are validated by clap");
            let mut all_ok = true;
            for r in &results {
                out_line(&format!(
                    "{} {} - {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                ));
                all_ok &= r.passed;
            }
            if all_ok {
                Ok(())
            } else {
                // verification failures are internal invariant violations
                panic!("verification suite {name} reported failures");
            }
        }
        Command::PlotWeights {
            label,
            out,
            radius,
            plot_format,
        } => plot_cmd(&label, out, radius, plot_format, lvl),
    }
}

fn classify_cmd(lvl: Level, format: Format) -> CliResult {
    let adm = enumerate_admissible(lvl)?;
    let c = counts(lvl);
    let cc = central_charge(lvl);
    let mut rows_text = String::new();
    let mut rows_json = vec![];
    for a in &adm {
        let tag = classify(a, lvl);
        let delta = conformal_weight(a.weight, lvl);
        let orbit = match tag.orbit {
            Orbit::Zero => "O0",
            Orbit::Minimal => "Omin",
            Orbit::Principal => "Opr",
        };
        let ty = match a.adm_type {
            AdmType::Planar => "planar",
            AdmType::Reflected => "reflected",
        };
        let mut flags = vec![];
        if tag.fdim_top {
            flags.push("fdimTop");
        }
        if tag.in_sigma1 {
            flags.push("Sigma1");
        }
        if tag.in_r1 {
            flags.push("R1");
        }
        if tag.in_r2 {
            flags.push("R2");
        }
        if tag.in_r3 {
            flags.push("R3");
        }
        writeln!(
            rows_text,
            "H({},{})  {}  I={:?} F={:?}  Delta={}  {}  [{}]",
            a.weight.d1,
            a.weight.d2,
            ty,
            a.integral,
            a.fractional,
            delta,
            orbit,
            flags.join(",")
        )
        .unwrap();
        rows_json.push(json!({
            "weight": [a.weight.d1.to_string(), a.weight.d2.to_string()],
            "type": ty,
            "integralPart": a.integral,
            "fractionalPart": a.fractional,
            "conformalWeight": delta.to_string(),
            "orbit": orbit,
            "flags": flags,
        }));
    }
    let text = format!(
        "{lvl}: central charge {cc}\ncounts: adm={} fdimTop={} sigma1={} r2={}\n{}",
        c.adm, c.fdim_top, c.sigma1, c.r2, rows_text
    );
    emit(
        format,
        text,
        json!({
            "schemaVersion": SCHEMA_VERSION,
            "level": {"u": lvl.u(), "v": lvl.v()},
            "centralCharge": cc.to_string(),
            "counts": {
                "admissible": c.adm,
                "finiteDimensionalTops": c.fdim_top,
                "semiRelaxedFamilies": c.sigma1,
                "relaxedFamilies": c.r2,
            },
            "weights": rows_json,
        }),
    );
    Ok(())
}

fn orbit_cmd(label: &str, lvl: Level, format: Format) -> CliResult {
    let m = parse_label(label, lvl)?;
    let canon = canonicalize(&m, lvl);
    let (flow0, twist0, core) = (canon.label().flow, canon.label().twist, canon.label().core);
    let base = ModuleLabel::from_core(core);
    // node at relative position p: the module sigma^p applied to the input
    let mut nodes: Vec<(Coweight, CanonicalLabel)> = vec![];
    for a in -4..=4i64 {
        for b in -4..=4i64 {
            let p = Coweight::new(a, b);
            let absolute = twist0.inverse().apply_coweight(p + flow0);
            if hex_norm(absolute) > 3 {
                continue;
            }
            if let Some(img) = positive_energy_flow_image(&base, absolute, lvl) {
                let node = canonicalize(&img.label().twisted(twist0), lvl);
                nodes.push((p, node));
            }
        }
    }
    let mut edges = vec![];
    for (i, (p, _)) in nodes.iter().enumerate() {
        for (j, (q, _)) in nodes.iter().enumerate() {
            if i < j && unit_coweights().contains(&(*q - *p)) {
                edges.push((i, j));
            }
        }
    }
    let mut text = String::new();
    for (i, (p, l)) in nodes.iter().enumerate() {
        writeln!(text, "node {i} at sf({},{}): {l}", p.c1, p.c2).unwrap();
    }
    for (i, j) in &edges {
        writeln!(text, "edge {i} -- {j}").unwrap();
    }
    let nodes_json: Vec<Value> = nodes
        .iter()
        .map(|(p, l)| json!({"position": [p.c1, p.c2], "label": l.to_string()}))
        .collect();
    emit(
        format,
        text,
        json!({
            "schemaVersion": SCHEMA_VERSION,
            "input": label,
            "nodes": nodes_json,
            "edges": edges.iter().map(|(i, j)| json!([i, j])).collect::<Vec<_>>(),
        }),
    );
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn smatrix_cmd(
    lvl: Level,
    format: Format,
    kind: SKind,
    flow: &str,
    flow2: &str,
    coset: Option<String>,
    t: Option<String>,
    twist: &str,
    class: HwName,
    expand: Option<u32>,
) -> CliResult {
    ensure_m32(lvl)?;
    let xi = parse_coweight(flow)?;
    let xi2 = parse_coweight(flow2)?;
    let entry = match kind {
        SKind::Standard => {
            let c = coset.ok_or("standard entries need --coset \"a,b\"")?;
            standard_s_entry(xi, CosetQ::new(parse_weight_pair(&c)?), xi2)
        }
        SKind::Vacuum => hw_s_entry(Coweight::zero(), HwClass::Vacuum, xi2),
        SKind::Semi => {
            let tval = parse_rat(&t.ok_or("semirelaxed entries need --t")?)?;
            let fam = sl3mm::admissible::m32_relaxed_base();
            let point = fam + sl3mm::rootdata::alpha1().scale(tval);
            let g = parse_word(twist)?;
            semi_relaxed_s_entry(xi, xi2, point, g, -g.apply_coweight(comega2()))
        }
        SKind::Hw => {
            let c = match class {
                HwName::Vacuum => HwClass::Vacuum,
                HwName::Omega1 => HwClass::MinusThreeHalfOmega1,
                HwName::Omega2 => HwClass::MinusThreeHalfOmega2,
                HwName::Rho => HwClass::MinusRhoHalf,
            };
            hw_s_entry(xi, c, xi2)
        }
    };
    let expansion = match expand {
        Some(order) => Some(entry.expand(order).map_err(|e| e.to_string())?),
        None => None,
    };
    let mut text = String::new();
    for (i, term) in entry.terms.iter().enumerate() {
        writeln!(
            text,
            "term {i}: ({}) / ({})",
            term.numerator, term.denominator
        )
        .unwrap();
    }
    if let Some(ref p) = expansion {
        writeln!(text, "expansion: {p}").unwrap();
    }
    let mut j = json!({
        "schemaVersion": SCHEMA_VERSION,
        "entry": s_entry_json(&entry),
    });
    if let Some(ref p) = expansion {
        j["expansion"] = fourier_poly_json(p);
    }
    emit(format, text, j);
    Ok(())
}

fn char_cmd(label: &str, order: usize, lvl: Level, format: Format) -> CliResult {
    ensure_m32(lvl)?;
    let parsed = parse_label_class(label, lvl)?;
    let (flow, core) = match parsed {
        ParsedLabel::Irreducible(m) => (m.flow, m.core),
        ParsedLabel::Degenerate { flow, core, .. } => (flow, core),
    };
    let Core::Rel { family, coset } = core else {
        return Err("q-expansion data is emitted for relaxed labels R[a,b]".into());
    };
    if !flow.is_zero() {
        return Err("q-expansion data is emitted for unflowed relaxed labels".into());
    }
    let series = eta_inv_fourth(order);
    let delta = conformal_weight(family, lvl);
    let text = format!(
        "ch R{} per weight: {}\nground conformal weight {}",
        coset, series, delta
    );
    emit(
        format,
        text,
        json!({
            "schemaVersion": SCHEMA_VERSION,
            "label": label,
            "groundConformalWeight": delta.to_string(),
            "leadingExponent": series.leading_exponent.to_string(),
            "coefficients": series
                .coefficients
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>(),
        }),
    );
    Ok(())
}

fn plot_cmd(
    label: &str,
    out: std::path::PathBuf,
    radius: Option<i64>,
    plot_format: PlotFormat,
    lvl: Level,
) -> CliResult {
    let m = parse_label(label, lvl)?;
    if !m.flow.is_zero() {
        return Err("weight-support plots need an unflowed label".into());
    }
    if matches!(m.core, Core::Hw(_)) && !lvl.is_m32() {
        return Err("highest-weight supports are tabulated at M(3,2) only".into());
    }
    let radius = radius.unwrap_or_else(truncation_radius);
    let pts = top_support_points(&m, radius);
    // orthonormal embedding: alpha1 -> (sqrt2, 0), alpha2 -> (-sqrt2/2, sqrt6/2)
    let embed = |w: Weight| -> (f64, f64) {
        let (t1, t2) = w.root_coords();
        let f = |r: Rat| *r.numer() as f64 / *r.denom() as f64;
        let (a, b) = (f(t1), f(t2));
        (
            a * std::f64::consts::SQRT_2 - b * std::f64::consts::SQRT_2 / 2.0,
            b * (6.0f64).sqrt() / 2.0,
        )
    };
    match plot_format {
        PlotFormat::Csv => {
            let mut s = String::from("d1,d2,x,y\n");
            for p in &pts {
                let (x, y) = embed(*p);
                writeln!(s, "{},{},{x},{y}", p.d1, p.d2).unwrap();
            }
            std::fs::write(&out, s)?;
        }
        PlotFormat::Json => {
            let points: Vec<Value> = pts
                .iter()
                .map(|p| {
                    let (x, y) = embed(*p);
                    json!({"d1": p.d1.to_string(), "d2": p.d2.to_string(), "x": x, "y": y})
                })
                .collect();
            let j = json!({
                "schemaVersion": SCHEMA_VERSION,
                "label": label,
                "radius": radius,
                "points": points,
            });
            std::fs::write(&out, serde_json::to_string_pretty(&j)?)?;
        }
    }
    out_line(&format!(
        "wrote {} support points to {}",
        pts.len(),
        out.display()
    ));
    Ok(())
}
