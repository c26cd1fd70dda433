//! Command-line front end: every computation in the library as a subcommand,
//! with table, JSON, and CSV output.

use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use qcycle::budget::Budget;
use qcycle::classdata::{datum_to_json, enumerate_classes, matrix_field};
use qcycle::groups::{Family, GroupId};
use qcycle::num_util::harmonic;
use qcycle::oracle::certify;
use qcycle::poly::{
    enumerate_monic_irreducibles, enumerate_self_involutive, irreducible_count, self_bar_count,
    self_tilde_count, MonicPoly,
};
use qcycle::series::{
    avg_order_lower_bound, charpoly_count, finite_n_probability,
    gordon_check, gordon_corollary_check, jordan_block_mean, limit_probability,
    rational_to_f64, AvgOrderFamily, CharpolyFamily, LimitKind, PartPredicate, SeriesFamily,
};

#[derive(Parser)]
#[command(
    name = "qcycle",
    about = "Cycle indices, conjugacy classes, and random-matrix statistics for the finite classical groups",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    /// Enumeration budget override (elements / scan steps); also readable
    /// from the QCYCLE_BUDGET environment variable
    #[arg(long, global = true)]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Irreducible-polynomial counts and lists
    Irred {
        #[command(subcommand)]
        action: IrredAction,
    },
    /// Enumerate the conjugacy classes of one group
    Classes {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// Print only the class sizes
        #[arg(long)]
        sizes_only: bool,
    },
    /// Exact probability that a uniform element has a property
    Prob {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
        /// semisimple | regular | regular-semisimple
        #[arg(long)]
        property: String,
    },
    /// Limiting probability with certified error
    Limit {
        /// ss-Mat | ss-GL | rss-Mat | reg-Mat | rss-GL | reg-GL
        #[arg(long)]
        kind: String,
        #[arg(long)]
        q: u32,
        /// Target enclosure width (e.g. 1e-9)
        #[arg(long, default_value = "1e-9")]
        eps: String,
    },
    /// Count elements with a fixed characteristic polynomial
    Charpoly {
        /// GL | U | Sp | O  (O reports the averaged proportion)
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u32,
        /// Coefficients low-to-high, e.g. "1,1,1" for z^2+z+1
        #[arg(long)]
        poly: String,
    },
    /// Mean number of irreducible factors of the characteristic polynomial
    JordanMean {
        #[arg(long)]
        family: String,
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n_max: u32,
    },
    /// Check Gordon's Rogers-Ramanujan generalization coefficientwise
    Gordon {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: u32,
        #[arg(long, default_value_t = 30)]
        max_degree: usize,
        /// Also check the centralizer-sum corollary at q = 2, 3
        #[arg(long)]
        corollary: bool,
    },
    /// Total-variation distance of factorization types from S_n cycle types
    Weyl {
        #[arg(long)]
        n: u32,
        /// Comma-separated list of prime powers
        #[arg(long)]
        q_list: String,
    },
    /// Certified lower bound for the mean element order
    AvgOrderBound {
        /// U | Sp | O
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
    },
    /// Brute-force certification of the formulas for one group
    Certify {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u32,
    },
}

#[derive(Subcommand)]
enum IrredAction {
    Count {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: u32,
        /// Count the self-tilde polynomials over F_{q^2} instead
        #[arg(long)]
        self_tilde: bool,
        /// Count the self-bar polynomials instead
        #[arg(long)]
        self_bar: bool,
        /// Exclude the polynomial z
        #[arg(long)]
        exclude_z: bool,
    },
    List {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        self_tilde: bool,
        #[arg(long)]
        self_bar: bool,
    },
}

fn budget_from(cli_budget: Option<u64>) -> Budget {
    let mut b = Budget::default();
    let env = std::env::var("QCYCLE_BUDGET")
        .ok()
        .and_then(|v| v.parse::<u64>().ok());
    if let Some(v) = cli_budget.or(env) {
        b.max_group_order = v;
        b.max_orbit_group_order = v;
        b.max_poly_scan = v;
        b.max_class_steps = v;
    }
    b
}

fn parse_eps(s: &str) -> anyhow::Result<BigRational> {
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.parse()?;
        let d: BigInt = den.parse()?;
        return Ok(BigRational::new(n, d));
    }
    if let Some((mant, exp)) = s.to_lowercase().split_once('e') {
        let e: i32 = exp.parse()?;
        let m = parse_eps(mant)?;
        let ten = BigRational::from(BigInt::from(10));
        return Ok(m * ten.pow(e));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = frac.len() as u32;
        let whole: BigInt = format!("{int}{frac}").parse()?;
        return Ok(BigRational::new(whole, BigInt::from(10u32).pow(digits)));
    }
    Ok(BigRational::from(s.parse::<BigInt>()?))
}

fn decimal(r: &BigRational) -> String {
    format!("{:.10}", rational_to_f64(r))
}

/// Rows of (column -> value) rendered as table, json, or csv.
struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(columns: Vec<&'static str>) -> Table {
        Table { columns, rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",") + "\n";
                for r in &self.rows {
                    let quoted: Vec<String> = r
                        .iter()
                        .map(|c| {
                            if c.contains(',') {
                                format!("\"{c}\"")
                            } else {
                                c.clone()
                            }
                        })
                        .collect();
                    out += &(quoted.join(",") + "\n");
                }
                out
            }
            Format::Json => {
                let arr: Vec<serde_json::Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: serde_json::Map<String, serde_json::Value> = self
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, v)| (c.to_string(), serde_json::Value::String(v.clone())))
                            .collect();
                        serde_json::Value::Object(obj)
                    })
                    .collect();
                serde_json::to_string_pretty(&arr).unwrap() + "\n"
            }
            Format::Table => {
                let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
                for r in &self.rows {
                    for (i, v) in r.iter().enumerate() {
                        widths[i] = widths[i].max(v.len());
                    }
                }
                let mut out = String::new();
                for (i, c) in self.columns.iter().enumerate() {
                    out += &format!("{:<w$}  ", c, w = widths[i]);
                }
                out += "\n";
                for r in &self.rows {
                    for (i, v) in r.iter().enumerate() {
                        out += &format!("{:<w$}  ", v, w = widths[i]);
                    }
                    out += "\n";
                }
                out
            }
        }
    }
}

fn emit(cli_output: &Option<std::path::PathBuf>, text: &str) -> anyhow::Result<()> {
    match cli_output {
        Some(path) => std::fs::write(path, text).context("writing output file")?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    let budget = budget_from(cli.budget);
    let format = cli.format;
    match cli.command {
        Command::Irred { action } => match action {
            IrredAction::Count { q, m, self_tilde, self_bar, exclude_z } => {
                let count = if self_tilde {
                    self_tilde_count(q, m)
                } else if self_bar {
                    self_bar_count(q, m)
                } else {
                    irreducible_count(q, m, exclude_z)
                };
                let mut t = Table::new(vec!["q", "m", "kind", "count"]);
                let kind = if self_tilde {
                    "self-tilde"
                } else if self_bar {
                    "self-bar"
                } else if exclude_z {
                    "irreducible (z excluded)"
                } else {
                    "irreducible"
                };
                t.push(vec![q.to_string(), m.to_string(), kind.into(), count.to_string()]);
                emit(&cli.output, &t.render(format))?;
            }
            IrredAction::List { q, m, self_tilde, self_bar } => {
                let (p, k) = prime_power(q as u64)?;
                let list = if self_tilde {
                    let field = qcycle::field::Field::new(p, 2 * k, &budget)
                        .map_err(anyhow::Error::from)?;
                    enumerate_self_involutive(&field, q as u64, m, &budget)?
                } else if self_bar {
                    let field = qcycle::field::Field::new(p, k, &budget)?;
                    enumerate_self_involutive(&field, q as u64, m, &budget)?
                } else {
                    let field = qcycle::field::Field::new(p, k, &budget)?;
                    enumerate_monic_irreducibles(&field, m, &budget)?
                };
                let field = if self_tilde {
                    qcycle::field::Field::new(p, 2 * k, &budget)?
                } else {
                    qcycle::field::Field::new(p, k, &budget)?
                };
                let mut t = Table::new(vec!["poly"]);
                for poly in &list {
                    t.push(vec![poly.render(&field)]);
                }
                emit(&cli.output, &t.render(format))?;
            }
        },
        Command::Classes { family, n, q, sizes_only } => {
            let g = GroupId::new(Family::parse(&family)?, n, q)?;
            let field = matrix_field(&g)?;
            let classes = enumerate_classes(&g, &budget)?;
            if format == Format::Json {
                let arr: Vec<serde_json::Value> = classes
                    .iter()
                    .map(|(d, s)| {
                        serde_json::json!({
                            "datum": datum_to_json(d, &g, &field),
                            "size": s.to_string(),
                        })
                    })
                    .collect();
                let total: BigInt = classes.iter().map(|(_, s)| s.clone()).sum();
                let doc = serde_json::json!({
                    "group": g.to_string(),
                    "order": g.order().to_string(),
                    "classes": arr,
                    "total": total.to_string(),
                });
                emit(&cli.output, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
            } else {
                let mut t = if sizes_only {
                    Table::new(vec!["size"])
                } else {
                    Table::new(vec!["datum", "size"])
                };
                for (d, s) in &classes {
                    if sizes_only {
                        t.push(vec![s.to_string()]);
                    } else {
                        t.push(vec![d.render(&field), s.to_string()]);
                    }
                }
                let total: BigInt = classes.iter().map(|(_, s)| s.clone()).sum();
                let mut text = t.render(format);
                text += &format!("# {} classes, total {} = |{}|\n", classes.len(), total, g);
                emit(&cli.output, &text)?;
            }
        }
        Command::Prob { family, n, q, property } => {
            let fam = SeriesFamily::parse(&family)?;
            let pred = PartPredicate::parse(&property)?;
            let p = finite_n_probability(fam, n, q, pred)?;
            let mut t = Table::new(vec!["family", "n", "q", "property", "exact", "decimal"]);
            t.push(vec![
                fam.name().into(),
                n.to_string(),
                q.to_string(),
                property,
                p.to_string(),
                decimal(&p),
            ]);
            emit(&cli.output, &t.render(format))?;
        }
        Command::Limit { kind, q, eps } => {
            let k = LimitKind::parse(&kind)?;
            let e = parse_eps(&eps)?;
            let interval = limit_probability(k, q, &e)?;
            let mut t = Table::new(vec!["kind", "q", "lo", "hi", "decimal", "width"]);
            t.push(vec![
                k.name().into(),
                q.to_string(),
                interval.lo.to_string(),
                interval.hi.to_string(),
                decimal(&interval.midpoint()),
                decimal(&interval.width()),
            ]);
            emit(&cli.output, &t.render(format))?;
        }
        Command::Charpoly { family, q, poly } => {
            let fam = CharpolyFamily::parse(&family)?;
            let field = fam.field(q)?;
            let phi = MonicPoly::parse(&field, &poly)?;
            let c = charpoly_count(fam, q, &phi, &budget)?;
            let mut t = Table::new(vec!["family", "q", "poly", "value", "decimal"]);
            t.push(vec![family, q.to_string(), poly, c.to_string(), decimal(&c)]);
            emit(&cli.output, &t.render(format))?;
        }
        Command::JordanMean { family, q, n_max } => {
            let fam = SeriesFamily::parse(&family)?;
            let mut t = Table::new(vec!["n", "mean", "decimal", "residual"]);
            for n in 1..=n_max {
                let mean = match jordan_block_mean(fam, n, q) {
                    Ok(m) => m,
                    Err(_) => continue, // inadmissible dimension (odd for Sp)
                };
                // centering that makes the residual bounded: H_n for GL/U/O, H_{n/2} for Sp
                let (c_num, h_index): (i64, u64) = match fam {
                    SeriesFamily::Gl | SeriesFamily::Mat => (2, n as u64),
                    SeriesFamily::Sp => (3, (n / 2) as u64),
                    _ => (3, n as u64),
                };
                let c = BigRational::new(BigInt::from(c_num), BigInt::from(2));
                let residual = &mean - c * harmonic(h_index);
                t.push(vec![
                    n.to_string(),
                    mean.to_string(),
                    decimal(&mean),
                    decimal(&residual),
                ]);
            }
            emit(&cli.output, &t.render(format))?;
        }
        Command::Gordon { k, i, max_degree, corollary } => {
            let rep = gordon_check(k, i, max_degree)?;
            let mut text = format!(
                "Gordon identity k={k} i={i} to x^{max_degree}: {}\n",
                if rep.equal { "EQUAL" } else { "MISMATCH" }
            );
            if corollary {
                let ok = gordon_corollary_check(k, max_degree, &[2, 3])?;
                text += &format!(
                    "centralizer-form corollary (q = 2, 3): {}\n",
                    if ok { "EQUAL" } else { "MISMATCH" }
                );
            }
            if format == Format::Json {
                let doc = serde_json::json!({
                    "k": k, "i": i, "max_degree": max_degree,
                    "equal": rep.equal,
                    "lhs": rep.lhs.to_json(),
                    "rhs": rep.rhs.to_json(),
                });
                emit(&cli.output, &(serde_json::to_string_pretty(&doc)? + "\n"))?;
            } else {
                emit(&cli.output, &text)?;
            }
            if !rep.equal {
                anyhow::bail!("Gordon identity mismatch");
            }
        }
        Command::Weyl { n, q_list } => {
            let qs: Vec<u32> = q_list
                .split(',')
                .map(|s| s.trim().parse().context("parsing q list"))
                .collect::<anyhow::Result<_>>()?;
            let mut t = Table::new(vec!["n", "q", "tv_exact", "tv_decimal"]);
            for q in qs {
                let d = qcycle::series::weyl_limit_distance(n, q)?;
                t.push(vec![n.to_string(), q.to_string(), d.to_string(), decimal(&d)]);
            }
            emit(&cli.output, &t.render(format))?;
        }
        Command::AvgOrderBound { family, n, q } => {
            let fam = AvgOrderFamily::parse(&family)?;
            let b = avg_order_lower_bound(fam, n, q)?;
            let mut t = Table::new(vec!["family", "n", "q", "bound", "decimal"]);
            t.push(vec![family, n.to_string(), q.to_string(), b.to_string(), decimal(&b)]);
            emit(&cli.output, &t.render(format))?;
        }
        Command::Certify { family, n, q } => {
            let g = GroupId::new(Family::parse(&family)?, n, q)?;
            let report = certify(&g, &budget)?;
            if format == Format::Json {
                emit(&cli.output, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            } else {
                let mut text = format!(
                    "{} ({} classes, {} elements): {}\n",
                    report.group,
                    report.formula_classes,
                    report.group_order,
                    if report.pass { "PASS" } else { "FAIL" }
                );
                for c in &report.checks {
                    text += &format!(
                        "  {}: {}{}\n",
                        c.name,
                        if c.pass { "ok" } else { "FAIL" },
                        if c.detail.is_empty() {
                            String::new()
                        } else {
                            format!(" ({})", c.detail)
                        }
                    );
                }
                emit(&cli.output, &text)?;
            }
            if !report.pass {
                anyhow::bail!("certification failed");
            }
        }
    }
    Ok(())
}

fn prime_power(q: u64) -> anyhow::Result<(u32, u32)> {
    let mut p = 2u64;
    while q % p != 0 {
        p += 1;
        if p > q {
            anyhow::bail!("{q} is not a prime power");
        }
    }
    let mut k = 0;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    if rest != 1 {
        anyhow::bail!("{q} is not a prime power");
    }
    Ok((p as u32, k))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            // budget errors exit 2, domain errors 1
            let msg = format!("{e:#}");
            if msg.contains("budget") {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

