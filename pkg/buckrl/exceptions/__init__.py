from buckrl.exceptions.exceptions import *
