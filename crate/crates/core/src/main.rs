use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use connmat::connection::{
    connection_matrices_for, gauge_matrix_for, gauge_transform, is_epsilon_factorized, is_integrable, ConnectionSystem,
    GaugeMatrix, Matrix,
};
use connmat::frontend::{
    d_monomial, matrix_to_json, parse_expr, parse_matrix, parse_weights, print_matrix, print_rational, print_weyl,
    split_list, OutputFormat, Report, SessionInput,
};
use connmat::groebner::{buchberger, normal_form, GroebnerBasis, WeylIdeal};
use connmat::weyl::{RationalWeylElement, WeylContext};
use connmat::{Error, Result};

/// Connection matrices of holonomic left ideals in the Weyl algebra.
#[derive(Parser)]
#[command(name = "connmat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone, Default)]
struct Common {
    /// Input file with `key: value` lines; flags override its entries.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Comma-separated variable names, e.g. `x,y`.
    #[arg(long)]
    vars: Option<String>,
    /// Comma-separated parameter names, e.g. `eps`.
    #[arg(long)]
    params: Option<String>,
    /// Comma-separated positive rational weights (default: all 1).
    #[arg(long)]
    weights: Option<String>,
    /// Generators separated by `;`.
    #[arg(long)]
    ideal: Option<String>,
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Clone, Default)]
struct BasisArg {
    /// Basis elements separated by `;`.
    #[arg(long)]
    basis: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Groebner basis.
    Gb(Common),
    /// Holonomic rank, or `infinity`.
    Rank(Common),
    /// Standard monomials of the ideal over rational functions.
    StandardMonomials(Common),
    /// Normal form of an operator modulo the ideal.
    NormalForm {
        #[command(flatten)]
        common: Common,
        /// Operator to reduce, e.g. `dx*dy`
        #[arg(long)]
        expr: Option<String>,
    },
    /// Connection matrices in the standard-monomial basis.
    Connection {
        #[command(flatten)]
        common: Common,
        /// Print the matrix of one-forms instead of one matrix per variable.
        #[arg(long)]
        one_form: bool,
    },
    /// Connection matrices in a given basis.
    ConnectionInBasis {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        basis: BasisArg,
    },
    /// Change-of-basis matrix from the standard monomials to a given basis.
    GaugeMatrix {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        basis: BasisArg,
    },
    /// Applies a gauge matrix to the standard-monomial system.
    GaugeTransform {
        #[command(flatten)]
        common: Common,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long)]
        gauge: Option<String>,
    },
    /// Checks the integrability conditions.
    CheckIntegrable {
        #[command(flatten)]
        common: Common,
        /// One matrix per variable (rows `;`, entries `,`); without it the
        /// system of the ideal is checked.
        #[arg(long = "matrix")]
        matrices: Vec<String>,
        #[command(flatten)]
        basis: BasisArg,
    },
    /// Checks whether the system is a parameter power times a parameter-free system.
    CheckEpsFactorized {
        #[command(flatten)]
        common: Common,
        /// Parameter to test, e.g. `eps`
        #[arg(long)]
        param: Option<String>,
        /// One matrix per variable, as for `check-integrable`
        #[arg(long = "matrix")]
        matrices: Vec<String>,
        #[command(flatten)]
        basis: BasisArg,
    },
}

/// Flags merged over the optional input file.
struct Session {
    input: SessionInput,
    format: OutputFormat,
    ctx: Arc<WeylContext>,
}

impl Session {
    fn load(c: &Common) -> Result<Self> {
        let mut input = match &c.file {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
                SessionInput::parse(&text)?
            }
            None => SessionInput::default(),
        };
        if let Some(v) = &c.vars {
            input.vars = split_list(v, ',');
        }
        if let Some(p) = &c.params {
            input.params = split_list(p, ',');
        }
        if let Some(w) = &c.weights {
            input.weights = Some(parse_weights(w)?);
        }
        if let Some(i) = &c.ideal {
            input.ideal = split_list(i, ';');
        }
        let format = match c.format {
            Some(Format::Text) => OutputFormat::Text,
            Some(Format::Json) => OutputFormat::Json,
            None => input.format.unwrap_or_default(),
        };
        let ctx = input.config().context()?;
        Ok(Session { input, format, ctx })
    }

    fn ideal(&self) -> Result<WeylIdeal> {
        if self.input.ideal.is_empty() {
            return Err(Error::Input("no ideal given (use --ideal or an 'ideal:' block)".into()));
        }
        WeylIdeal::parse(&self.ctx, &self.input.ideal)
    }

    fn basis(&mut self, arg: &BasisArg) -> Result<Vec<RationalWeylElement>> {
        if let Some(b) = &arg.basis {
            self.input.basis = split_list(b, ';');
        }
        if self.input.basis.is_empty() {
            return Err(Error::Input("no basis given (use --basis or a 'basis:' block)".into()));
        }
        self.input.basis.iter().map(|s| parse_expr(&self.ctx, s)).collect()
    }

    fn matrices(&mut self, flags: &[String]) -> Result<Vec<Matrix>> {
        if !flags.is_empty() {
            self.input.matrices = flags.iter().map(|m| split_list(m, ';')).collect();
        }
        self.input.matrices.iter().map(|rows| parse_matrix(&self.ctx, rows)).collect()
    }

    fn report(&self, gb: Option<&GroebnerBasis>) -> Report {
        let mut r = Report::new(&self.ctx);
        r.groebner_basis = gb.map(|g| g.elements().iter().map(print_weyl).collect());
        r
    }
}

fn print_system(ctx: &WeylContext, sys: &ConnectionSystem) -> String {
    let basis: Vec<String> = sys.basis().iter().map(print_rational).collect();
    let mut out = format!("basis: {}\n", basis.join("; "));
    for (i, a) in sys.matrices().iter().enumerate() {
        out.push_str(&format!("A_{}:\n", ctx.x_name(i)));
        out.push_str(&print_matrix(ctx, a));
    }
    out
}

fn system_report(s: &Session, gb: Option<&GroebnerBasis>, sys: &ConnectionSystem) -> Report {
    let mut r = s.report(gb);
    r.basis = Some(sys.basis().iter().map(print_rational).collect());
    r.matrices = Some(sys.matrices().iter().map(|a| matrix_to_json(&s.ctx, a)).collect());
    r
}

fn emit(s: &Session, text: String, report: Report) -> String {
    match s.format {
        OutputFormat::Text => text,
        OutputFormat::Json => report.to_json() + "\n",
    }
}

/// The system of the ideal, in the given basis if there is one.
fn system(s: &mut Session, basis: &BasisArg) -> Result<(GroebnerBasis, ConnectionSystem)> {
    let gb = buchberger(&s.ideal()?);
    let sys = connection_matrices_for(&gb)?;
    if basis.basis.is_none() && s.input.basis.is_empty() {
        return Ok((gb, sys));
    }
    let b = s.basis(basis)?;
    let g = gauge_matrix_for(&gb, &b)?;
    let sys = gauge_transform(&g, &sys)?;
    Ok((gb, sys))
}

fn run(command: Command) -> Result<String> {
    match command {
        Command::Gb(c) => {
            let s = Session::load(&c)?;
            let gb = buchberger(&s.ideal()?);
            let text: String = gb.elements().iter().map(|g| print_weyl(g) + "\n").collect();
            Ok(emit(&s, text, s.report(Some(&gb))))
        }
        Command::Rank(c) => {
            let s = Session::load(&c)?;
            let gb = buchberger(&s.ideal()?);
            let rank = gb.holonomic_rank().to_string();
            let mut r = s.report(Some(&gb));
            r.rank = Some(rank.clone());
            Ok(emit(&s, rank + "\n", r))
        }
        Command::StandardMonomials(c) => {
            let s = Session::load(&c)?;
            let gb = buchberger(&s.ideal()?);
            let sm: Vec<String> = gb
                .standard_monomials()?
                .iter()
                .map(|b| {
                    let m = d_monomial(&s.ctx, b);
                    if m.is_empty() {
                        "1".to_string()
                    } else {
                        m
                    }
                })
                .collect();
            let text: String = sm.iter().map(|m| format!("{m}\n")).collect();
            let mut r = s.report(Some(&gb));
            r.standard_monomials = Some(sm);
            Ok(emit(&s, text, r))
        }
        Command::NormalForm { common, expr } => {
            let mut s = Session::load(&common)?;
            if expr.is_some() {
                s.input.expr = expr;
            }
            let e = s.input.expr.clone().ok_or_else(|| Error::Input("no expression given (use --expr)".into()))?;
            let p = parse_expr(&s.ctx, &e)?;
            let gb = buchberger(&s.ideal()?);
            let nf = print_rational(&normal_form(p, &gb));
            let mut r = s.report(Some(&gb));
            r.normal_form = Some(nf.clone());
            Ok(emit(&s, nf + "\n", r))
        }
        Command::Connection { common, one_form } => {
            let mut s = Session::load(&common)?;
            s.input.basis.clear();
            let (gb, sys) = system(&mut s, &BasisArg::default())?;
            let form = sys.one_form();
            let text = if one_form { form.to_string() } else { print_system(&s.ctx, &sys) };
            let mut r = system_report(&s, Some(&gb), &sys);
            if one_form {
                r.one_form = Some(
                    (0..form.size()).map(|j| (0..form.size()).map(|k| form.render_entry(j, k)).collect()).collect(),
                );
            }
            Ok(emit(&s, text, r))
        }
        Command::ConnectionInBasis { common, basis } => {
            let mut s = Session::load(&common)?;
            s.basis(&basis)?;
            let (gb, sys) = system(&mut s, &basis)?;
            Ok(emit(&s, print_system(&s.ctx, &sys), system_report(&s, Some(&gb), &sys)))
        }
        Command::GaugeMatrix { common, basis } => {
            let mut s = Session::load(&common)?;
            let b = s.basis(&basis)?;
            let gb = buchberger(&s.ideal()?);
            let g = gauge_matrix_for(&gb, &b)?;
            let mut r = s.report(Some(&gb));
            r.basis = Some(b.iter().map(print_rational).collect());
            r.gauge = Some(matrix_to_json(&s.ctx, g.matrix()));
            Ok(emit(&s, print_matrix(&s.ctx, g.matrix()), r))
        }
        Command::GaugeTransform { common, gauge } => {
            let mut s = Session::load(&common)?;
            if let Some(g) = gauge {
                s.input.gauge = split_list(&g, ';');
            }
            if s.input.gauge.is_empty() {
                return Err(Error::Input("no gauge matrix given (use --gauge or a 'gauge:' block)".into()));
            }
            let g = GaugeMatrix::new(parse_matrix(&s.ctx, &s.input.gauge)?)?;
            let gb = buchberger(&s.ideal()?);
            let sys = gauge_transform(&g, &connection_matrices_for(&gb)?)?;
            let mut r = system_report(&s, Some(&gb), &sys);
            r.gauge = Some(matrix_to_json(&s.ctx, g.matrix()));
            Ok(emit(&s, print_system(&s.ctx, &sys), r))
        }
        Command::CheckIntegrable { common, matrices, basis } => {
            let mut s = Session::load(&common)?;
            let raw = s.matrices(&matrices)?;
            let (gb, mats) = if raw.is_empty() {
                let (gb, sys) = system(&mut s, &basis)?;
                (Some(gb), sys.matrices().to_vec())
            } else {
                (None, raw)
            };
            let ok = is_integrable(&mats)?;
            let mut r = s.report(gb.as_ref());
            r.matrices = Some(mats.iter().map(|a| matrix_to_json(&s.ctx, a)).collect());
            r.integrable = Some(ok);
            Ok(emit(&s, format!("{ok}\n"), r))
        }
        Command::CheckEpsFactorized { common, param, matrices, basis } => {
            let mut s = Session::load(&common)?;
            if param.is_some() {
                s.input.param = param;
            }
            let p = s.input.param.clone().ok_or_else(|| Error::Input("no parameter given (use --param)".into()))?;
            let raw = s.matrices(&matrices)?;
            let (gb, mats) = if raw.is_empty() {
                let (gb, sys) = system(&mut s, &basis)?;
                (Some(gb), sys.matrices().to_vec())
            } else {
                (None, raw)
            };
            let k = is_epsilon_factorized(&s.ctx, &mats, &p)?;
            let text = match k {
                Some(k) => format!("true (k = {k})\n"),
                None => "false\n".to_string(),
            };
            let mut r = s.report(gb.as_ref());
            r.matrices = Some(mats.iter().map(|a| matrix_to_json(&s.ctx, a)).collect());
            r.epsilon_factorized = Some(k.is_some());
            r.k = k;
            Ok(emit(&s, text, r))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_math_error() { 1 } else { 2 })
        }
    }
}
