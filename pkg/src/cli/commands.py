"""
子命令实现
run_* 是可直接调用的流水线，返回报告对象；cmd_* 包装命令行参数并映射退出码。
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Tuple

import pandas as pd

from config.dominance_settings import settings
from src.distributions.discrete import mean
from src.distributions.io import DistributionModel, dump_distribution, load_distribution
from src.iid_returns.euler import check_euler_order, euler_product_dist
from src.iid_returns.fractions import optimal_fraction
from src.iid_returns.models import IncrementDist
from src.iid_returns.monte_carlo import mc_order_check
from src.portfolio_solver.dual import solve_complete_dual
from src.portfolio_solver.dynamic_programming import solve_dp
from src.portfolio_solver.models import SolveMethod
from src.stochastic_order.checks import check_centered_convex, check_mc, check_relation
from src.stochastic_order.models import OrderRelation
from src.tree_market.constructions import (
    ProbabilityConvention,
    build_base_example,
    build_inserted_branch,
    build_perturbed_example,
    perturb,
)
from src.tree_market.io import dump_tree, load_tree
from src.tree_market.validation import validate_tree
from src.utility.models import UtilitySpec
from src.utils.error_handler import EnumerationCapExceededError, InvalidParameterError, exit_code_on_error
from .reports import (
    Command,
    CounterexampleReport,
    IidReport,
    OrderReport,
    OutputFormat,
    RunConfig,
    SolveReport,
    StageFractions,
    gap_curve_frame,
    write_curve,
    write_report,
)

logger = logging.getLogger(__name__)

# 精确枚举超限后自动切换到蒙特卡洛时的路径数
AUTO_MC_PATHS = 100_000
# 插入分支在 build_perturbed_example 中的节点ID
INSERTED_NODE_ID = 2


def _check_risk_aversion_pair(p_more: float, p_less: float) -> None:
    if not p_more > p_less > 0:
        raise InvalidParameterError(f"要求 p_more > p_less > 0: p_more={p_more}, p_less={p_less}")


def run_solve(
    tree_path: str,
    utility_path: str,
    x0: float,
    method: SolveMethod = SolveMethod.DP,
    workers: int = 1,
    output_format: OutputFormat = OutputFormat.JSON,
) -> SolveReport:
    """读取事件树与效用函数，求解最优财富过程"""
    tree = load_tree(tree_path)
    u = UtilitySpec.model_validate_json(Path(utility_path).read_text(encoding="utf-8"))
    method = SolveMethod(method)
    if method is SolveMethod.DUAL:
        solution = solve_complete_dual(tree, u, x0)
    else:
        solution = solve_dp(tree, u, x0, workers=workers)
    config = RunConfig(
        command=Command.SOLVE,
        inputs={"tree": str(tree_path), "utility": str(utility_path)},
        parameters={"x0": x0, "workers": float(workers)},
        output_format=output_format,
    )
    return SolveReport(
        config=config,
        solution=solution,
        terminal_distribution=DistributionModel.from_dist(solution.terminal_dist),
    )


def run_order(
    file_x: str,
    file_y: str,
    relation: OrderRelation = OrderRelation.MONOTONE_CONVEX,
    tol: Optional[float] = None,
    output_format: OutputFormat = OutputFormat.JSON,
) -> Tuple[OrderReport, pd.DataFrame]:
    """比较两个分布文件，返回判定与看涨差曲线"""
    X = load_distribution(file_x)
    Y = load_distribution(file_y)
    verdict = check_relation(X, Y, OrderRelation(relation), tol)
    curve = gap_curve_frame(X, Y)
    config = RunConfig(
        command=Command.ORDER,
        inputs={"x": str(file_x), "y": str(file_y)},
        tolerance=tol,
        output_format=output_format,
    )
    report = OrderReport(config=config, verdict=verdict, mean_x=mean(X), mean_y=mean(Y), curve_points=len(curve))
    return report, curve


def run_counterexample(
    eps: float = 0.01,
    alpha: float = 0.05,
    K: float = 20.0,
    p_more: float = 0.9,
    p_less: float = 0.3,
    convention: ProbabilityConvention = ProbabilityConvention.NORMALIZED,
    tol: Optional[float] = None,
    output_format: OutputFormat = OutputFormat.JSON,
) -> Tuple[CounterexampleReport, pd.DataFrame]:
    """
    基准模型、插入分支与扰动模型上分别求解两个 power 投资者，
    并对扰动模型的终端财富做单调凸序检验
    """
    _check_risk_aversion_pair(p_more, p_less)
    u_more, u_less = UtilitySpec.power(p_more), UtilitySpec.power(p_less)

    base = build_base_example()
    inserted = build_inserted_branch(alpha, K)
    tree = build_perturbed_example(eps, alpha, K, convention)

    def stages(u: UtilitySpec):
        base_sol = solve_dp(base, u, 1.0)
        inserted_sol = solve_dp(inserted, u, 1.0)
        sol = solve_dp(tree, u, 1.0)
        branch = sol.policy.controls.get(INSERTED_NODE_ID) if eps > 0 else None
        fractions = StageFractions(
            base_root=base_sol.policy.control(base.root.id),
            inserted_branch=inserted_sol.policy.control(inserted.root.id),
            perturbed_root=sol.policy.control(tree.root.id),
            perturbed_branch=branch,
        )
        return fractions, sol.terminal_dist

    fractions_more, X = stages(u_more)
    fractions_less, Y = stages(u_less)
    verdict = check_mc(X, Y, tol)
    centered = check_centered_convex(X, Y, tol)

    config = RunConfig(
        command=Command.COUNTEREXAMPLE,
        parameters={"eps": eps, "alpha": alpha, "K": K, "p_more": p_more, "p_less": p_less},
        tolerance=tol,
        convention=convention,
        output_format=output_format,
    )
    report = CounterexampleReport(
        config=config,
        fractions_more=fractions_more,
        fractions_less=fractions_less,
        terminal_more=DistributionModel.from_dist(X),
        terminal_less=DistributionModel.from_dist(Y),
        max_payoff_more=X.support_max,
        max_payoff_less=Y.support_max,
        verdict=verdict,
        centered_verdict=centered,
    )
    logger.info(
        f"反例: MC 序{'成立' if verdict.holds else '不成立'}, 见证执行价 {verdict.witness_strike:.6g}, "
        f"最大财富 {X.support_max:.6g} / {Y.support_max:.6g}"
    )
    return report, gap_curve_frame(X, Y)


def run_iid(
    increment_path: str,
    p_more: float,
    p_less: float,
    periods: int,
    paths: Optional[int] = None,
    seed: Optional[int] = None,
    tol: Optional[float] = None,
    workers: int = 1,
    output_format: OutputFormat = OutputFormat.JSON,
) -> Tuple[IidReport, pd.DataFrame]:
    """
    i.i.d. 收益市场：最优常数比例下中心化 Euler 乘积的凸序检验

    未指定路径数时先做精确枚举，超过枚举上限且给出种子时自动切换到蒙特卡洛。
    """
    _check_risk_aversion_pair(p_more, p_less)
    config = RunConfig(
        command=Command.IID,
        inputs={"increment": str(increment_path)},
        parameters={"p_more": p_more, "p_less": p_less, "periods": float(periods)},
        tolerance=tol,
        seed=seed,
        paths=paths,
        output_format=output_format,
    )
    inc = IncrementDist(load_distribution(increment_path))
    pi_more = optimal_fraction(inc, p_more)
    pi_less = optimal_fraction(inc, p_less)

    if paths is None:
        try:
            verdict = check_euler_order(inc, pi_more, pi_less, periods, tol)
            curve = gap_curve_frame(euler_product_dist(inc, pi_more, periods), euler_product_dist(inc, pi_less, periods))
            report = IidReport(config=config, pi_more=pi_more, pi_less=pi_less, periods=periods, mode="exact", verdict=verdict)
            return report, curve
        except EnumerationCapExceededError:
            if seed is None:
                raise
            logger.warning(f"精确枚举超过上限，切换到蒙特卡洛 ({AUTO_MC_PATHS} 条路径)")
            paths = AUTO_MC_PATHS
            config = config.model_copy(update={"paths": paths})

    verdict, curve = mc_order_check(inc, pi_more, pi_less, periods, paths, seed, workers=workers)
    report = IidReport(config=config, pi_more=pi_more, pi_less=pi_less, periods=periods, mode="monte_carlo", verdict=verdict)
    return report, curve


def _emit(report, curve: Optional[pd.DataFrame], args: argparse.Namespace) -> None:
    if OutputFormat(args.format) is OutputFormat.CSV and curve is not None:
        write_curve(curve, args.output)
        return
    write_report(report, args.output)
    if curve is not None and getattr(args, "curve", None):
        write_curve(curve, args.curve)


@exit_code_on_error
def cmd_solve(args: argparse.Namespace) -> int:
    report = run_solve(args.tree, args.utility, args.x0, args.method, args.workers, OutputFormat(args.format))
    if OutputFormat(args.format) is OutputFormat.CSV:
        sol = report.solution
        frame = pd.DataFrame(
            {
                "node": list(sol.wealth),
                "wealth": list(sol.wealth.values()),
                "control": [sol.policy.controls.get(n) for n in sol.wealth],
            }
        )
        frame.to_csv(args.output or sys.stdout, index=False, float_format=settings.csv_float_format, lineterminator="\n")
        return 0
    write_report(report, args.output)
    return 0


@exit_code_on_error
def cmd_order(args: argparse.Namespace) -> int:
    report, curve = run_order(args.x, args.y, args.relation, args.tol, OutputFormat(args.format))
    _emit(report, curve, args)
    return 0


@exit_code_on_error
def cmd_counterexample(args: argparse.Namespace) -> int:
    report, curve = run_counterexample(
        args.eps,
        args.alpha,
        args.K,
        args.p_more,
        args.p_less,
        ProbabilityConvention(args.convention),
        args.tol,
        OutputFormat(args.format),
    )
    _emit(report, curve, args)
    if args.export_laws:
        out = Path(args.export_laws)
        out.mkdir(parents=True, exist_ok=True)
        dump_distribution(report.terminal_more.to_dist(), out / "terminal_more.json")
        dump_distribution(report.terminal_less.to_dist(), out / "terminal_less.json")
        logger.info(f"终端财富分布已导出到 {out}")
    return 0


@exit_code_on_error
def cmd_perturb(args: argparse.Namespace) -> int:
    tree = load_tree(args.tree)
    validate_tree(tree)
    target_time = tree.horizon - 1 if args.target_time is None else args.target_time
    selector = args.node if args.node else (lambda n: True)
    perturbed = perturb(tree, target_time, selector, args.eps, args.alpha, args.K)
    report = validate_tree(perturbed)
    logger.info(f"扰动后事件树: {report.node_count} 个节点, 不完备节点 {report.incomplete_nodes}")
    if args.output:
        dump_tree(perturbed, args.output)
    else:
        print(perturbed.model_dump_json(indent=2))
    return 0


@exit_code_on_error
def cmd_iid(args: argparse.Namespace) -> int:
    report, curve = run_iid(
        args.increment,
        args.p_more,
        args.p_less,
        args.periods,
        args.paths,
        args.seed,
        args.tol,
        args.workers,
        OutputFormat(args.format),
    )
    _emit(report, curve, args)
    return 0


__all__ = [
    "run_solve",
    "run_order",
    "run_counterexample",
    "run_iid",
    "cmd_solve",
    "cmd_order",
    "cmd_counterexample",
    "cmd_perturb",
    "cmd_iid",
]
