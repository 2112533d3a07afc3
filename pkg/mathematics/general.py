import sympy

from typing import Callable, Dict


def get_derivative(function: sympy.Expr,
                   symbol: sympy.Symbol,
                   order: int = 1) -> sympy.Expr:
    """
    This function takes the derivative of a sympy expression.

    :param function: Expression, e.g. a generating function.
    :param symbol: sympy.Symbol to differentiate by.
    :param order: Order of the derivative; order 0 returns the expression itself.

    :return: Expression derivative.
    """

    if order == 0:
        return function
    return sympy.diff(function, symbol, order)


def get_symbol_value_mapping(symbols_array: list[sympy.Symbol],
                             values_array: list[float | int]) -> Dict[sympy.Symbol, float | int]:
    """
    Function maps sympy symbols to their numeric values, e.g. [k_plus, k_minus] and [1.0, 0.5] give
    {k_plus: 1.0, k_minus: 0.5}. This mapping is passed to .subs() before lambdify.

    :param symbols_array: List of sympy.Symbols.
    :param values_array: Values in the same order.

    :return: Dictionary with {symbol: value} mapping.
    """

    if len(symbols_array) != len(values_array):
        raise ValueError(f"Got {len(symbols_array)} symbols and {len(values_array)} values")
    return dict(zip(symbols_array, values_array))


def get_numeric_function(function: sympy.Expr,
                         symbol: sympy.Symbol) -> Callable:
    """
    Turns a one-variable sympy expression into a numpy-vectorised callable.

    :param function: Expression whose only free symbol is `symbol`.
    :param symbol: The argument.

    :return: Callable accepting floats or numpy arrays.
    """

    return sympy.lambdify(symbol, function, modules="numpy")
