"""Training and evaluation reports: a delimited cost log plus rendered
figures next to it."""

import matplotlib

matplotlib.use("Agg")


def write_cost_log(log, path):
    """Tab-separated per-epoch costs: epoch, attract, repel, regularization,
    total."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("epoch\tattract\trepel\tregularization\ttotal\n")
        for entry in log:
            fh.write(f"{entry.epoch}\t{entry.attract:.10g}\t{entry.repel:.10g}"
                     f"\t{entry.regularization:.10g}\t{entry.total:.10g}\n")


def plot_cost_curves(log, path):
    """Line plot of the cost components across epochs."""
    import matplotlib.pyplot as plt

    epochs = [entry.epoch for entry in log]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(epochs, [e.total for e in log], "k-o", label="total", linewidth=2)
    ax.plot(epochs, [e.attract for e in log], "-s", label="attract")
    ax.plot(epochs, [e.repel for e in log], "-^", label="repel")
    ax.plot(epochs, [e.regularization for e in log], "--", label="regularization")
    ax.set_xlabel("epoch")
    ax.set_ylabel("summed batch cost")
    ax.set_title("training cost by epoch")
    ax.legend()
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_score_scatter(gold, predicted, rho, path):
    """Gold similarity scores against model cosines."""
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5.5, 5))
    ax.scatter(gold, predicted, s=18, alpha=0.6, edgecolors="none")
    ax.set_xlabel("gold score")
    ax.set_ylabel("cosine similarity")
    ax.set_title(f"rho = {rho:.4f}")
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
