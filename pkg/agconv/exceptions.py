# coding=utf-8


class AgconvException(Exception):

    def __init__(self, message):
        self.message = message

    def __str__(self):
        return '%s: %s' % (type(self).__name__, self.message)


class FieldException(AgconvException):
    pass


class FieldMismatchException(AgconvException):

    def __init__(self, left, right):
        self.left = left
        self.right = right
        AgconvException.__init__(self, 'operands live in different fields: {} vs {}'.format(left, right))


class FieldZeroDivisionException(AgconvException):
    pass


class BasisException(AgconvException):
    pass


class CodeParamsException(AgconvException):
    pass


class CurveException(AgconvException):
    pass


class SplitRankException(AgconvException):

    def __init__(self, condition, message):
        # condition 取值 'rank(H_0)' 或 'rank(H_i)'，便于报告定位
        self.condition = condition
        AgconvException.__init__(self, message)


class ConvolutionalParamsException(AgconvException):
    pass


class FamilyParamsException(AgconvException):
    pass


class MatrixFormatException(AgconvException):
    pass
