use std::fmt::Write as _;
use std::process::ExitCode;
use std::sync::Arc;

use brumer_forge::annihilate::{verify_reduction_identity, MockClassModule};
use brumer_forge::character::{CharacterTable, Family};
use brumer_forge::exactnum::{Cyclotomic, CyclotomicLiteral};
use brumer_forge::group::FiniteGroup;
use brumer_forge::groupring::{
    conductor_member, e_chi, nr_ideal_sample, orbit_element, pr_chi, reduced_norm, CentralElement, GroupRingElement,
};
use brumer_forge::stickelberger::{
    assemble_theta_from_l, assemble_theta_reduction, euler_factor_eps, integrality_check, ArithmeticInput, EpsVariant,
    StickelbergerElement,
};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

const D12_DATA: &str = include_str!("../../core/examples/d12_paper.json");
const D12_MODULE: &str = include_str!("../../core/examples/d12_mock.json");

const PAPER_S_INF: &str = "(1/4)(1-j)(67-29(σ+σ^2)-7(τ+στ+σ^2τ))";
const PAPER_S_RAM: &str = "(2/3)(1-j)(1+σ+σ^2-τ-στ-σ^2τ)";

#[derive(Parser)]
#[command(name = "brumer-forge", version, about = "Exact group-ring and Stickelberger-element computations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum EpsArg {
    Limit,
    LiteralNp,
}

impl From<EpsArg> for EpsVariant {
    fn from(e: EpsArg) -> Self {
        match e {
            EpsArg::Limit => EpsVariant::Limit,
            EpsArg::LiteralNp => EpsVariant::LiteralNp,
        }
    }
}

#[derive(clap::Args, Clone)]
struct FamilyArgs {
    /// d4p, q, z2a4, product or table.
    #[arg(long)]
    family: String,
    #[arg(long)]
    p: Option<usize>,
    #[arg(long)]
    n: Option<u32>,
}

impl FamilyArgs {
    fn family(&self) -> brumer_forge::Result<Family> {
        Family::from_parts(&self.family, self.p, self.n)
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Multiplication table and conjugacy classes.
    Group {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Character table with monomial witnesses.
    Chartable {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// `e_chi` and `pr_chi` for every row.
    Idempotents {
        #[command(flatten)]
        fam: FamilyArgs,
    },
    /// Central conductor membership of an element, or of the orbit
    /// generators built from the inverse differents.
    Conductor {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        element: Option<String>,
    },
    /// Reduced norm of an element, or of seeded random matrices.
    Nr {
        #[command(flatten)]
        fam: FamilyArgs,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        count: usize,
    },
    /// Assemble theta from an arithmetic data file.
    Theta {
        /// Defaults to the bundled D12 data.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        #[arg(long)]
        omit_trivial: bool,
        #[arg(long, value_enum, default_value_t = EpsArg::Limit)]
        eps_variant: EpsArg,
    },
    /// Recompute the bundled D12 example and compare with the closed forms.
    VerifyExample {
        #[arg(long, value_enum, default_value_t = EpsArg::Limit)]
        eps_variant: EpsArg,
    },
    /// Act on a mock class module.
    Annihilate {
        /// Module file; defaults to the bundled Z/48 module over the D12 group.
        #[arg(long)]
        input: Option<std::path::PathBuf>,
        #[arg(long)]
        element: String,
    },
}

enum Failure {
    Usage(String),
    Verification,
}

impl From<brumer_forge::Error> for Failure {
    fn from(e: brumer_forge::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<String, (String, Failure)>;

fn main() -> ExitCode {
    if let Some(n) = std::env::var("BRUMER_FORGE_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err((out, Failure::Verification)) => {
            print!("{out}");
            ExitCode::from(1)
        }
        Err((out, Failure::Usage(msg))) => {
            print!("{out}");
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let machine = cli.format == Format::Machine;
    let usage = |f: Failure| (String::new(), f);
    match &cli.verb {
        Verb::Group { fam } => {
            let g = fam.family().map_err(|e| usage(e.into()))?.group().map_err(|e| usage(e.into()))?;
            Ok(if machine { g.to_text() } else { group_text(&g) })
        }
        Verb::Chartable { fam } => {
            let t = table(fam).map_err(usage)?;
            Ok(if machine { pretty_json(&t.to_machine()) } else { t.to_text() })
        }
        Verb::Idempotents { fam } => {
            let t = table(fam).map_err(usage)?;
            if machine {
                let rows: Vec<Value> = (0..t.len())
                    .map(|i| {
                        json!({
                            "character": t.name(i),
                            "e": element_json(&e_chi(&t, i).to_group_ring()),
                            "pr": element_json(&pr_chi(&t, i)),
                        })
                    })
                    .collect();
                return Ok(pretty_json(&Value::Array(rows)));
            }
            let mut s = String::new();
            for i in 0..t.len() {
                writeln!(s, "e_{} = {}", t.name(i), e_chi(&t, i).to_group_ring()).unwrap();
                writeln!(s, "pr_{} = {}", t.name(i), pr_chi(&t, i)).unwrap();
            }
            Ok(s)
        }
        Verb::Conductor { fam, element } => checked(conductor(fam, element.as_deref(), machine).map_err(usage)?),
        Verb::Nr {
            fam,
            element,
            seed,
            count,
        } => nr(fam, element.as_deref(), *seed, *count, machine).map_err(usage),
        Verb::Theta {
            input,
            omit_trivial,
            eps_variant,
        } => checked(theta(input.as_deref(), *omit_trivial, (*eps_variant).into(), machine).map_err(usage)?),
        Verb::VerifyExample { eps_variant } => verify_example((*eps_variant).into(), machine),
        Verb::Annihilate { input, element } => checked(annihilate(input.as_deref(), element, machine).map_err(usage)?),
    }
}

fn checked((out, ok): (String, bool)) -> Outcome {
    if ok {
        Ok(out)
    } else {
        Err((out, Failure::Verification))
    }
}

fn table(fam: &FamilyArgs) -> Result<Arc<CharacterTable>, Failure> {
    Ok(Arc::new(CharacterTable::builtin(fam.family()?)?))
}

fn pretty_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serialisable");
    s.push('\n');
    s
}

fn literal(x: &Cyclotomic) -> Value {
    let x = x.minimal();
    match x.as_rational() {
        Some(q) => match q.is_integer().then(|| q.to_integer().to_string().parse::<i64>().ok()).flatten() {
            Some(k) => json!(k),
            None => json!(q.to_string()),
        },
        None => serde_json::to_value(CyclotomicLiteral::from_cyclotomic(&x)).expect("serialisable"),
    }
}

fn element_json(x: &GroupRingElement) -> Value {
    let g = x.group();
    let mut m = Map::new();
    for (k, c) in x.coeffs().iter().enumerate() {
        if !c.is_zero() {
            m.insert(g.label(k).to_string(), literal(c));
        }
    }
    json!({ "group": g.name(), "coefficients": m })
}

fn central_json(x: &CentralElement) -> Value {
    let t = x.table();
    let mut m = Map::new();
    for i in 0..t.len() {
        m.insert(t.name(i).to_string(), literal(x.component(i)));
    }
    json!({ "components": m, "group_ring": element_json(&x.to_group_ring()) })
}

fn group_text(g: &FiniteGroup) -> String {
    let mut s = String::new();
    writeln!(s, "{} of order {}", g.name(), g.order()).unwrap();
    writeln!(s, "generators: {}", g.generator_names().join(", ")).unwrap();
    writeln!(s, "elements: {}", g.labels().join(" ")).unwrap();
    let classes = g.conjugacy_classes();
    writeln!(s, "conjugacy classes: {}", g.num_classes()).unwrap();
    for c in &classes.classes {
        let members: Vec<&str> = c.iter().map(|&x| g.label(x)).collect();
        writeln!(s, "  order {}: {{{}}}", g.element_order(c[0]), members.join(", ")).unwrap();
    }
    s
}

/// The flag is false when a listed orbit generator falls outside the conductor.
fn conductor(fam: &FamilyArgs, element: Option<&str>, machine: bool) -> Result<(String, bool), Failure> {
    let t = table(fam)?;
    if let Some(text) = element {
        let x = GroupRingElement::parse(t.group(), text)?;
        let c = CentralElement::from_group_ring(&t, &x)?;
        let v = conductor_member(&c);
        let failing: Vec<&str> = v.failing_rows.iter().map(|&i| t.name(i)).collect();
        let out = if machine {
            pretty_json(&json!({
                "element": central_json(&c),
                "member": v.member,
                "failing_rows": failing,
                "galois_equivariant": v.equivariant,
            }))
        } else {
            format!(
                "{}\nmember: {}{}\n",
                c.component_string(),
                v.member,
                if failing.is_empty() { String::new() } else { format!(" (fails at {})", failing.join(", ")) }
            )
        };
        return Ok((out, true));
    }
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut all = true;
    for i in 0..t.len() {
        if t.orbit_indices(i).into_iter().min() != Some(i) {
            continue;
        }
        let alpha = t
            .field(i)
            .inverse_different_generator()
            .ok_or_else(|| Failure::Usage(format!("no inverse different generator found for {}", t.name(i))))?;
        let x = orbit_element(&t, i, &alpha)?;
        let v = conductor_member(&x);
        all &= v.member;
        writeln!(text, "{}: alpha = {}; sum alpha^σ pr = {}; member: {}", t.name(i), alpha, x.to_group_ring(), v.member)
            .unwrap();
        rows.push(json!({
            "character": t.name(i),
            "alpha": literal(&alpha),
            "element": element_json(&x.to_group_ring()),
            "member": v.member,
        }));
    }
    let out = if machine { pretty_json(&Value::Array(rows)) } else { text };
    Ok((out, all))
}

fn nr(fam: &FamilyArgs, element: Option<&str>, seed: u64, count: usize, machine: bool) -> Result<String, Failure> {
    let t = table(fam)?;
    let values = match element {
        Some(text) => vec![reduced_norm(&t, &GroupRingElement::parse(t.group(), text)?)?],
        None => nr_ideal_sample(&t, count, 2, 3, seed)?,
    };
    if machine {
        return Ok(pretty_json(&Value::Array(values.iter().map(central_json).collect())));
    }
    let mut s = String::new();
    for v in &values {
        writeln!(s, "{}", v.to_group_ring()).unwrap();
        writeln!(s, "components: {}", v.component_string()).unwrap();
    }
    Ok(s)
}

fn load_input(path: Option<&std::path::Path>) -> Result<ArithmeticInput, Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => D12_DATA.to_string(),
    };
    Ok(ArithmeticInput::from_json(&text)?)
}

fn theta_report(inp: &ArithmeticInput, th: &StickelbergerElement) -> String {
    let mut s = String::new();
    let sets = |v: &[String]| if v.is_empty() { "∅".to_string() } else { v.join(", ") };
    writeln!(s, "theta ({}; S = S∞ ∪ {{{}}}; T = {{{}}})", th.mode, sets(&th.s), sets(&th.t)).unwrap();
    writeln!(s, "components: {}", th.theta.component_string()).unwrap();
    writeln!(s, "group ring: {}", th.to_group_ring()).unwrap();
    if let Some(f) = th.factored_form(inp.j) {
        writeln!(s, "factored: {f}").unwrap();
    }
    s
}

fn theta(path: Option<&std::path::Path>, omit_trivial: bool, variant: EpsVariant, machine: bool) -> Result<(String, bool), Failure> {
    let mut inp = load_input(path)?;
    inp.omit_trivial |= omit_trivial;
    let mut out = Vec::new();
    if inp.l_values.iter().any(Option::is_some) {
        out.push(assemble_theta_from_l(&inp, variant)?);
    }
    if !inp.abelian.is_empty() {
        out.push(assemble_theta_reduction(&inp, variant)?);
    }
    if out.is_empty() {
        return Err(Failure::Usage("input has neither L-values nor abelian blocks".into()));
    }
    let agree = out.windows(2).all(|w| w[0].theta == w[1].theta);
    if machine {
        let v: Vec<Value> = out
            .iter()
            .map(|th| {
                let r = integrality_check(&th.theta);
                json!({
                    "mode": th.mode.to_string(),
                    "S": th.s,
                    "T": th.t,
                    "theta": central_json(&th.theta),
                    "factored": th.factored_form(inp.j),
                    "in_maximal_centre": r.in_maximal_centre,
                    "in_group_ring": r.in_group_ring,
                    "denominator": r.denominator.to_string(),
                })
            })
            .collect();
        return Ok((pretty_json(&json!({"results": v, "modes_agree": agree})), agree));
    }
    let mut s = String::new();
    for th in &out {
        s.push_str(&theta_report(&inp, th));
        writeln!(s, "{}", integrality_check(&th.theta)).unwrap();
    }
    if out.len() == 2 {
        writeln!(s, "modes agree: {agree}").unwrap();
    }
    Ok((s, agree))
}

struct Check {
    name: String,
    ok: bool,
    detail: String,
}

fn verify_example(variant: EpsVariant, machine: bool) -> Outcome {
    let fail = |e: brumer_forge::Error| (String::new(), Failure::Usage(e.to_string()));
    let full = ArithmeticInput::from_json(D12_DATA).map_err(fail)?;
    let s_inf = full.with_s(&[]).map_err(fail)?;
    let t = full.table.clone();
    let g = t.group().clone();
    let mut checks = Vec::new();

    let th_inf = assemble_theta_from_l(&s_inf, variant).map_err(fail)?;
    let paper_inf = GroupRingElement::parse(&g, PAPER_S_INF).map_err(fail)?;
    let paper_inf_comps = CentralElement::from_group_ring(&t, &paper_inf).map_err(fail)?;
    checks.push(Check {
        name: "θ_S∞".into(),
        ok: th_inf.to_group_ring() == paper_inf,
        detail: format!(
            "computed {} = {}; closed form {} has components {}",
            th_inf.theta.component_string(),
            th_inf.factored_form(full.j).unwrap_or_default(),
            PAPER_S_INF,
            paper_inf_comps.component_string()
        ),
    });

    let th_ram = assemble_theta_from_l(&full, variant).map_err(fail)?;
    let paper_ram = GroupRingElement::parse(&g, PAPER_S_RAM).map_err(fail)?;
    let chi4 = t.index_by_name("χ4").expect("D12 table has χ4");
    let eight_e4 = e_chi(&t, chi4).to_group_ring().scale(&Cyclotomic::from_int(8));
    checks.push(Check {
        name: "θ_S∞∪Sram".into(),
        ok: th_ram.to_group_ring() == paper_ram && paper_ram == eight_e4,
        detail: format!(
            "computed {} = {}",
            th_ram.theta.component_string(),
            th_ram.factored_form(full.j).unwrap_or_default()
        ),
    });

    let s_places = full.s_places();
    let mut eps_ok = true;
    let mut eps_detail = Vec::new();
    for (name, want) in [("χ2", 0), ("χ4", 1), ("χ6", 0)] {
        let i = t.index_by_name(name).expect("D12 row");
        let v = s_places
            .iter()
            .fold(Cyclotomic::one(), |acc, p| &acc * &euler_factor_eps(&t, i, p, variant))
            .minimal();
        eps_ok &= v == Cyclotomic::from_int(want);
        eps_detail.push(format!("ε_{name} = {v}"));
    }
    checks.push(Check {
        name: "ε_S_ram".into(),
        ok: eps_ok,
        detail: eps_detail.join(", "),
    });

    let red_inf = assemble_theta_reduction(&s_inf, variant).map_err(fail)?;
    let red_ram = assemble_theta_reduction(&full, variant).map_err(fail)?;
    checks.push(Check {
        name: "L-values vs reduction".into(),
        ok: red_inf.theta == th_inf.theta && red_ram.theta == th_ram.theta,
        detail: "both S".into(),
    });

    let mut chain_ok = true;
    for b in &full.abelian {
        for (inp, th) in [(&s_inf, &th_inf), (&full, &th_ram)] {
            let r = verify_reduction_identity(inp, b, &Cyclotomic::one(), th).map_err(fail)?;
            chain_ok &= r.holds();
        }
    }
    checks.push(Check {
        name: "reduction identity".into(),
        ok: chain_ok,
        detail: format!("{} abelian blocks", full.abelian.len()),
    });

    let report = integrality_check(&th_inf.theta);
    checks.push(Check {
        name: "θ_S∞ integrality".into(),
        ok: report.in_maximal_centre && !report.in_group_ring,
        detail: format!("in ζ(Λ′): {}, Z[G] denominator {}", report.in_maximal_centre, report.denominator),
    });

    let all = checks.iter().all(|c| c.ok);
    let out = if machine {
        pretty_json(&Value::Array(
            checks
                .iter()
                .map(|c| json!({"check": c.name, "pass": c.ok, "detail": c.detail}))
                .collect(),
        ))
    } else {
        let mut s = String::new();
        for c in &checks {
            writeln!(s, "{} {}: {}", if c.ok { "✓" } else { "✗" }, c.name, c.detail).unwrap();
        }
        s
    };
    if all {
        Ok(out)
    } else {
        Err((out, Failure::Verification))
    }
}

fn annihilate(path: Option<&std::path::Path>, element: &str, machine: bool) -> Result<(String, bool), Failure> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
        None => D12_MODULE.to_string(),
    };
    let m = MockClassModule::from_json(&text)?;
    let alpha = GroupRingElement::parse(m.group(), element)?;
    let r = m.annihilates(&alpha)?;
    let out = if machine {
        pretty_json(&json!({
            "element": element_json(&alpha),
            "annihilates": r.annihilates,
            "witness": r.witness,
        }))
    } else {
        format!("{r}\n")
    };
    Ok((out, r.annihilates))
}
