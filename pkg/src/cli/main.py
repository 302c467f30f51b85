"""
命令行入口

    python -m src.cli solve --tree model.json --utility u.json --x0 1.0
    python -m src.cli order --x x.json --y y.json --relation MC --curve gap.csv
    python -m src.cli counterexample --eps 0.01 --alpha 0.05 --K 20 --p-more 0.9 --p-less 0.3
    python -m src.cli perturb --tree model.json --node 2 --eps 0.01 --alpha 0.05 --K 20 --output out.json
    python -m src.cli iid --increment inc.json --p-more 0.9 --p-less 0.3 --periods 4
"""
import argparse
import logging
from typing import Optional, Sequence

from config.dominance_settings import settings
from src.logging_config import configure_logging
from src.portfolio_solver.models import SolveMethod
from src.stochastic_order.models import OrderRelation
from src.tree_market.constructions import ProbabilityConvention
from .commands import cmd_counterexample, cmd_iid, cmd_order, cmd_perturb, cmd_solve
from .reports import OutputFormat

logger = logging.getLogger(__name__)


def _positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"必须为正数: {text}")
    return value


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format",
        choices=[f.value for f in OutputFormat],
        default=OutputFormat.JSON.value,
        help="输出格式：json 报告或 csv 曲线/表格",
    )
    common.add_argument("--output", default=None, help="输出文件（默认 stdout）")
    common.add_argument("--tol", type=_positive_float, default=None, help="序关系检验容差（默认按均值缩放的 1e-9）")
    common.add_argument("--log-level", default=settings.log_level, help="日志级别（日志写到 stderr）")
    common.add_argument("--log-file", default=settings.log_file, help="额外写入的轮转日志文件")
    return common


def build_parser() -> argparse.ArgumentParser:
    """构造全部子命令的解析器"""
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="python -m src.cli",
        description="有限状态市场上的期望效用最优投资与二阶随机占优检验",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", parents=[common], help="求解事件树上的最优财富过程")
    solve.add_argument("--tree", required=True, help="事件树 JSON 文件")
    solve.add_argument("--utility", required=True, help='效用函数 JSON，如 {"kind":"power","p":0.9}')
    solve.add_argument("--x0", type=float, default=1.0, help="初始财富")
    solve.add_argument("--method", choices=[m.value for m in SolveMethod], default=SolveMethod.DP.value, help="dp（任意市场）或 dual（完备市场）")
    solve.add_argument("--workers", type=int, default=1, help="逆向归纳层内并行线程数")
    solve.set_defaults(handler=cmd_solve)

    order = sub.add_parser("order", parents=[common], help="比较两个分布文件的序关系")
    order.add_argument("--x", required=True, help="分布 X 的 JSON 文件")
    order.add_argument("--y", required=True, help="分布 Y 的 JSON 文件")
    order.add_argument("--relation", choices=[r.value for r in OrderRelation], default=OrderRelation.MONOTONE_CONVEX.value, help="MC、C 或 centered-C")
    order.add_argument("--curve", default=None, help="另外写出 strike,call_x,call_y,gap 曲线 CSV")
    order.set_defaults(handler=cmd_order)

    counter = sub.add_parser("counterexample", parents=[common], help="在插入小概率分支的两期模型上复现序关系失效")
    counter.add_argument("--eps", type=float, default=0.01, help="插入分支的概率")
    counter.add_argument("--alpha", type=float, default=0.05, help="插入分支中下跌的概率")
    counter.add_argument("--K", type=float, default=20.0, help="插入分支上涨倍数")
    counter.add_argument("--p-more", type=float, default=0.9, help="风险厌恶较高投资者的 p")
    counter.add_argument("--p-less", type=float, default=0.3, help="风险厌恶较低投资者的 p")
    counter.add_argument("--convention", choices=[c.value for c in ProbabilityConvention], default=ProbabilityConvention.NORMALIZED.value, help="根节点概率约定")
    counter.add_argument("--curve", default=None, help="另外写出看涨差曲线 CSV")
    counter.add_argument("--export-laws", default=None, help="把两个终端财富分布写成 JSON 到该目录")
    counter.set_defaults(handler=cmd_counterexample)

    pert = sub.add_parser("perturb", parents=[common], help="对 T−1 时刻节点插入小概率分支")
    pert.add_argument("--tree", required=True, help="事件树 JSON 文件")
    pert.add_argument("--target-time", type=int, default=None, help="被扰动节点的时刻（默认 T−1）")
    pert.add_argument("--node", type=int, action="append", default=None, help="被扰动节点ID，可重复；缺省时扰动该时刻全部节点")
    pert.add_argument("--eps", type=float, required=True, help="硬币正面概率")
    pert.add_argument("--alpha", type=float, default=0.05, help="插入分支中下跌的概率")
    pert.add_argument("--K", type=float, default=20.0, help="插入分支上涨倍数")
    pert.set_defaults(handler=cmd_perturb)

    iid = sub.add_parser("iid", parents=[common], help="i.i.d. 收益市场的凸序检验")
    iid.add_argument("--increment", required=True, help="单期收益分布 JSON 文件")
    iid.add_argument("--p-more", type=float, default=0.9, help="风险厌恶较高投资者的 p")
    iid.add_argument("--p-less", type=float, default=0.3, help="风险厌恶较低投资者的 p")
    iid.add_argument("--periods", type=int, required=True, help="期数 N")
    iid.add_argument("--paths", type=int, default=None, help="蒙特卡洛路径数（需要 --seed）")
    iid.add_argument("--seed", type=int, default=None, help="蒙特卡洛种子")
    iid.add_argument("--workers", type=int, default=1, help="蒙特卡洛线程数（不影响结果）")
    iid.add_argument("--curve", default=None, help="另外写出看涨差曲线 CSV")
    iid.set_defaults(handler=cmd_iid)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """解析参数并分派；返回退出码（0 成功，2 参数或文件错误）"""
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.log_level, args.log_file)
    logger.info(f"执行子命令 {args.command}")
    return args.handler(args)


__all__ = ["build_parser", "main"]
