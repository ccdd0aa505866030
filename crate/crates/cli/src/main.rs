use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use frobskein_core::frobenius::{
    check_g_square_zero, closed_surface_eval, crt_map_check, dual_basis, genus_term,
    product_system, specialize_roots,
};
use frobskein_core::gmatrix::{g2_power, g_matrix_recursive, g_matrix_symmetric};
use frobskein_core::skein2::{
    dependence_witness, lambda_f_eval, neckcut_functional_check, normalize_element,
    AbstractComponent, AbstractSurface, TubeParams,
};
use frobskein_core::symfun::{product_identity_rhs, verify_product_identities};
use frobskein_core::{AElement, Error, FrobSystem, GMatrix, MultiPoly, SkeinElement, SphereConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "frobskein",
    version,
    about = "Frobenius systems, genus-reduction matrices and sphere skein normal forms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
}

/// Root multiplicities `k1,k2,...`.
#[derive(Clone, Debug)]
struct Mults(Vec<usize>);

fn parse_mults(s: &str) -> Result<Mults, String> {
    let ks = s
        .split(',')
        .map(|k| {
            k.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad multiplicity `{k}`: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if ks.len() > 8 || ks.iter().any(|&k| k > 8) {
        return Err("at most 8 roots, each of multiplicity at most 8".into());
    }
    Ok(Mults(ks))
}

#[derive(Subcommand)]
enum Command {
    /// Dual basis of the rank-n universal system.
    DualBasis {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        n: u32,
        #[command(flatten)]
        common: Common,
    },
    /// The genus-reduction element g.
    GenusTerm {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        n: u32,
        /// Print g^power instead of g.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(0..=64))]
        power: u32,
        #[command(flatten)]
        common: Common,
    },
    /// eps(mark g^genus), a closed surface of the given genus.
    SurfaceEval {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=16))]
        n: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        genus: u32,
        #[arg(long, default_value = "1")]
        mark: String,
        #[command(flatten)]
        common: Common,
    },
    /// The matrix of multiplication by g.
    Gmatrix {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=12))]
        n: u32,
        /// Entries in the monomial symmetric basis of the roots.
        #[arg(long, conflicts_with = "power")]
        symmetric: bool,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=32))]
        power: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Whether g^2 = 0 for the given root multiplicities.
    RootsCheck {
        #[arg(long, value_parser = parse_mults)]
        multiplicities: Mults,
        #[command(flatten)]
        common: Common,
    },
    /// The product system obtained by the Chinese remainder theorem.
    ProductSystem {
        #[arg(long, value_parser = parse_mults)]
        multiplicities: Mults,
        #[command(flatten)]
        common: Common,
    },
    /// The product identities for p_a e_b in n variables.
    Symcheck {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        n: u32,
        /// The power a of p_a.
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        power: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=8))]
        b: u32,
        #[command(flatten)]
        common: Common,
    },
    /// Normal form of a sphere configuration or a formal sum of them.
    SkeinNormalize {
        /// Marks such as `d,p,p`, or a sum such as `2 * [d,p] - a1 * [p,p]`.
        #[arg(long, allow_hyphen_values = true)]
        config: String,
        #[command(flatten)]
        common: Common,
    },
    /// The functional lambda_F for a repeated root.
    LambdaF {
        #[arg(long, value_parser = parse_mults)]
        multiplicities: Mults,
        /// 1-based index of the root.
        #[arg(long, default_value_t = 1)]
        root: usize,
        /// Evaluate on F marked x^power instead of running the relation checks.
        #[arg(long)]
        power: Option<u32>,
        #[command(flatten)]
        common: Common,
    },
    /// Both sides of the dependence among plain spheres for tubes of genus 2i.
    Witness {
        /// i; zero uses the sphere parameters.
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=8))]
        genus: u32,
        #[command(flatten)]
        common: Common,
    },
}

struct Output {
    text: String,
    json: Value,
}

fn out(text: impl ToString, json: Value) -> Output {
    Output {
        text: text.to_string(),
        json,
    }
}

fn run(cmd: Command) -> Result<(Output, bool), Error> {
    Ok(match cmd {
        Command::DualBasis { n, common } => {
            let sys = FrobSystem::universal(n as usize)?;
            let d = dual_basis(&sys);
            (out(&d, d.to_json()), common.json)
        }
        Command::GenusTerm { n, power, common } => {
            let sys = FrobSystem::universal(n as usize)?;
            let g = genus_term(&sys)?.pow(power as usize);
            (out(&g, g.to_json()), common.json)
        }
        Command::SurfaceEval {
            n,
            genus,
            mark,
            common,
        } => {
            let sys = FrobSystem::universal(n as usize)?;
            let mark = AElement::parse(&sys, &mark)?;
            let v = closed_surface_eval(&sys, genus as usize, &mark)?;
            (out(&v, json!({ "value": v.to_string() })), common.json)
        }
        Command::Gmatrix {
            n,
            symmetric,
            power,
            common,
        } => {
            if symmetric {
                let m = g_matrix_symmetric(n as usize)?;
                (out(&m, m.to_json()), common.json)
            } else {
                let m = match power {
                    Some(k) if n == 2 => g2_power(k)?,
                    Some(k) => {
                        let g = g_matrix_recursive(n as usize)?;
                        (1..k).fold(g.clone(), |acc: GMatrix, _| acc.mul(&g))
                    }
                    None => g_matrix_recursive(n as usize)?,
                };
                (out(&m, m.to_json()), common.json)
            }
        }
        Command::RootsCheck {
            multiplicities: Mults(multiplicities),
            common,
        } => {
            let zero = check_g_square_zero(&multiplicities)?;
            let crt = crt_map_check(&multiplicities)?;
            let text = format!("g^2 = 0: {zero}\ncrt map: {crt}");
            (
                out(
                    text,
                    json!({ "multiplicities": multiplicities, "g_square_zero": zero, "crt_map": crt }),
                ),
                common.json,
            )
        }
        Command::ProductSystem {
            multiplicities: Mults(multiplicities),
            common,
        } => {
            let prod = product_system(&multiplicities)?;
            let mut text = String::new();
            for (i, (f, g)) in prod.factors.iter().zip(&prod.g_prime.parts).enumerate() {
                text.push_str(&format!("factor {}: p = {}, g = {g}\n", i + 1, f.p_poly()));
            }
            let g_sq_zero = prod.g_prime.mul(&prod.g_prime)?.is_zero();
            text.push_str(&format!("(g')^2 = 0: {g_sq_zero}"));
            let mut v = prod.to_json();
            v["g_prime_square_zero"] = g_sq_zero.into();
            (out(text, v), common.json)
        }
        Command::Symcheck {
            n,
            power,
            b,
            common,
        } => {
            let (n, b) = (n as usize, b as usize);
            let rhs = product_identity_rhs(power, b, n)?;
            let holds = verify_product_identities(power, b, n)?;
            let text = format!("p_{power} e_{b} = {rhs}: {holds}");
            (
                out(text, json!({ "rhs": rhs.to_string(), "holds": holds })),
                common.json,
            )
        }
        Command::SkeinNormalize { config, common } => {
            let elt = if config.contains('[') {
                SkeinElement::parse(&config)?
            } else {
                SkeinElement::config(SphereConfig::parse(&config)?)
            };
            let nf = normalize_element(&elt)?;
            (out(&nf, nf.to_json()), common.json)
        }
        Command::LambdaF {
            multiplicities: Mults(multiplicities),
            root,
            power,
            common,
        } => match power {
            Some(k) => {
                let sys = specialize_roots(&multiplicities)?;
                let s = AbstractSurface::new(vec![AbstractComponent::MarkedF { power: k }]);
                let v = lambda_f_eval(&s, &sys, root)?;
                (out(&v, json!({ "value": v.to_string() })), common.json)
            }
            None => {
                let ok = neckcut_functional_check(&multiplicities, root)?;
                (
                    out(ok, json!({ "neckcut_functional_check": ok })),
                    common.json,
                )
            }
        },
        Command::Witness { genus, common } => {
            let i = genus as usize;
            let params = if i == 0 {
                TubeParams::sphere()
            } else {
                TubeParams::genus_family(i)?
            };
            let w = dependence_witness(i, &params)?;
            // The chain must land on exactly 4 t_dot [p].
            let four_t_dot = &MultiPoly::int(w.params.t_dot.table(), 4) * &w.params.t_dot;
            let derived = w.rhs == SkeinElement::term(SphereConfig::plain(1), four_t_dot);
            let text = format!(
                "t_plain = {}\nt_dot = {}\nlhs = {}\nrhs = {}\nrhs = 4 t_dot [p]: {derived}",
                w.params.t_plain, w.params.t_dot, w.lhs, w.rhs
            );
            let v = json!({
                "t_plain": w.params.t_plain.to_string(),
                "t_dot": w.params.t_dot.to_string(),
                "lhs": w.lhs.to_string(),
                "rhs": w.rhs.to_string(),
                "rhs_is_4_t_dot": derived,
            });
            (out(text, v), common.json)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok((o, json)) => {
            if json {
                println!("{}", o.json);
            } else {
                println!("{}", o.text);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}: {e}", e.name());
            ExitCode::from(1)
        }
    }
}
